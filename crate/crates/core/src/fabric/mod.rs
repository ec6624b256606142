//! Deterministic simulated backends for the task families, plus per-task
//! workspaces.

pub mod catalog;
mod prng;
mod registry;
mod workspace;

use serde::{Deserialize, Serialize};

use crate::value::{Record, Value};

pub use catalog::{families, family, family_names, FamilyDef, FieldKind, ToolDef};
pub use prng::{keyed_hash, response_rng, splitmix64};
pub use registry::{
    band_label, build_registry, derived_fields, round2, ParamType, Registry, ToolError, ToolSpec, CLAIM_DONE,
    FILLER_FACTOR, LIST_DIRECTORY, READ_FILE, WORKSPACE_TOOLS, WRITE_FILE,
};
pub use workspace::{RunDir, Workspace, WorkspaceError};

/// One tool invocation as seen in a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolCallRecord {
    pub turn: u32,
    pub tool: String,
    pub args: Record,
    /// UTF-8 length of the canonical serialization of the returned value.
    pub result_bytes: usize,
    pub ok: bool,
}

impl ToolCallRecord {
    pub fn new(turn: u32, tool: &str, args: Record, result: &Value, ok: bool) -> Self {
        ToolCallRecord { turn, tool: tool.to_string(), args, result_bytes: result.to_canonical_json().len(), ok }
    }
}
