use std::fmt;

use serde::{Deserialize, Serialize};

use crate::value::{Record, Value};

/// A parse failure, located at the first offending line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("SyntaxError: {message} (line {line})")]
pub struct SyntaxIssue {
    pub line: usize,
    pub message: String,
    /// The offending line with one line of context on each side, each
    /// prefixed by its line number.
    pub context_snippet: String,
}

impl SyntaxIssue {
    pub fn new(source: &str, line: usize, message: impl Into<String>) -> Self {
        let lines: Vec<&str> = source.lines().collect();
        let count = lines.len().max(1);
        let line = line.clamp(1, count);
        let first = line.saturating_sub(1).max(1);
        let last = (line + 1).min(count);
        let context_snippet = (first..=last)
            .map(|n| {
                let marker = if n == line { '>' } else { ' ' };
                format!("{marker}{n:>4} | {}", lines.get(n - 1).copied().unwrap_or(""))
            })
            .collect::<Vec<_>>()
            .join("\n");
        SyntaxIssue { line, message: message.into(), context_snippet }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuntimeIssueKind {
    TypeError,
    UnknownName,
    UnknownTool,
    ArityError,
    BudgetExceeded,
    DepthExceeded,
    ToolFailure,
}

impl RuntimeIssueKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RuntimeIssueKind::TypeError => "type_error",
            RuntimeIssueKind::UnknownName => "unknown_name",
            RuntimeIssueKind::UnknownTool => "unknown_tool",
            RuntimeIssueKind::ArityError => "arity_error",
            RuntimeIssueKind::BudgetExceeded => "budget_exceeded",
            RuntimeIssueKind::DepthExceeded => "depth_exceeded",
            RuntimeIssueKind::ToolFailure => "tool_failure",
        }
    }
}

impl fmt::Display for RuntimeIssueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One entry of the statement stack active when evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFrame {
    pub line: usize,
    pub summary: String,
    /// Skill the statement belongs to, when evaluated through the library.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skill: Option<String>,
}

/// A structured evaluation failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct RuntimeIssue {
    pub kind: RuntimeIssueKind,
    pub message: String,
    /// Outermost statement first; the last frame is where the failure arose.
    pub trace: Vec<TraceFrame>,
    /// The bindings the failing evaluation was started with.
    pub inputs: Record,
}

impl RuntimeIssue {
    /// Line of the innermost frame.
    pub fn line(&self) -> Option<usize> {
        self.trace.last().map(|f| f.line)
    }

    pub fn to_value(&self) -> Value {
        Value::from(serde_json::to_value(self).expect("runtime issue serializes"))
    }
}
