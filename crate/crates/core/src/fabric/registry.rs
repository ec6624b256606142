use std::collections::BTreeSet;

use indexmap::IndexMap;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::catalog::{self, FamilyDef, FieldKind, ToolDef};
use super::prng::response_rng;
use super::workspace::{Workspace, WorkspaceError};
use crate::value::{Record, Value};

/// Multiplier applied to the oracle bytes of a response to size its filler.
pub const FILLER_FACTOR: usize = 4;

pub const WRITE_FILE: &str = "write_file";
pub const READ_FILE: &str = "read_file";
pub const LIST_DIRECTORY: &str = "list_directory";
pub const CLAIM_DONE: &str = "claim_done";
pub const WORKSPACE_TOOLS: [&str; 4] = [WRITE_FILE, READ_FILE, LIST_DIRECTORY, CLAIM_DONE];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamType {
    String,
    Number,
    List,
    Record,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolSpec {
    pub name: String,
    pub description: String,
    pub params: Vec<(String, ParamType)>,
    pub family: String,
    /// Oracle-relevant fields in the response; empty for workspace tools.
    pub output_fields: Vec<String>,
}

impl ToolSpec {
    pub fn is_data_tool(&self) -> bool {
        !self.output_fields.is_empty()
    }

    /// `name(p1, p2)` as shown in prompts.
    pub fn signature(&self) -> String {
        let params: Vec<&str> = self.params.iter().map(|(p, _)| p.as_str()).collect();
        format!("{}({})", self.name, params.join(", "))
    }
}

#[derive(Debug, Error)]
pub enum ToolError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("unknown tool '{0}'")]
    UnknownTool(String),
    #[error("bad arguments for {tool}: {detail}")]
    BadArguments { tool: String, detail: String },
    #[error(transparent)]
    Workspace(#[from] WorkspaceError),
}

impl ToolError {
    pub fn kind(&self) -> &'static str {
        match self {
            ToolError::UnknownFamily(_) => "unknown_family",
            ToolError::UnknownTool(_) => "unknown_tool",
            ToolError::BadArguments { .. } => "bad_arguments",
            ToolError::Workspace(_) => "workspace_error",
        }
    }
}

/// The simulated backend for one family.
#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    family: &'static FamilyDef,
    seed: u64,
    tools: IndexMap<String, ToolSpec>,
    edge_cases: BTreeSet<String>,
}

pub fn build_registry(family: &str, seed: u64, edge_cases: &BTreeSet<String>) -> Result<Registry, ToolError> {
    let def = catalog::family(family).ok_or_else(|| ToolError::UnknownFamily(family.to_string()))?;
    let mut tools = IndexMap::new();
    for tool in def.tools {
        tools.insert(
            tool.name.to_string(),
            ToolSpec {
                name: tool.name.to_string(),
                description: tool.description.to_string(),
                params: vec![(def.entity_param.to_string(), ParamType::String)],
                family: def.name.to_string(),
                output_fields: tool.fields.iter().map(|f| f.name.to_string()).collect(),
            },
        );
    }
    let workspace_specs: [(&str, &str, &[&str]); 4] = [
        (WRITE_FILE, "Save JSON output", &["path", "content"]),
        (READ_FILE, "Read a workspace file", &["path"]),
        (LIST_DIRECTORY, "List workspace files", &["path"]),
        (CLAIM_DONE, "Signal task completion", &["status"]),
    ];
    for (name, description, params) in workspace_specs {
        tools.insert(
            name.to_string(),
            ToolSpec {
                name: name.to_string(),
                description: description.to_string(),
                params: params.iter().map(|p| (p.to_string(), ParamType::String)).collect(),
                family: def.name.to_string(),
                output_fields: Vec::new(),
            },
        );
    }
    Ok(Registry { family: def, seed, tools, edge_cases: edge_cases.clone() })
}

const FILLER_WORDS: &[&str] = &[
    "comprehensive", "record", "extended", "metadata", "includes", "historical", "context", "annotations",
    "derived", "from", "community", "sources", "and", "curated", "reference", "material", "with", "notes",
    "on", "provenance", "revision", "history", "localized", "summaries", "related", "links", "the", "entry",
];

impl Registry {
    pub fn family(&self) -> &'static FamilyDef {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edge_cases(&self) -> &BTreeSet<String> {
        &self.edge_cases
    }

    pub fn is_edge_case(&self, entity: &str) -> bool {
        self.edge_cases.contains(entity)
    }

    pub fn tools(&self) -> impl Iterator<Item = &ToolSpec> {
        self.tools.values()
    }

    pub fn tool(&self, name: &str) -> Option<&ToolSpec> {
        self.tools.get(name)
    }

    pub fn data_tools(&self) -> impl Iterator<Item = &ToolSpec> {
        self.tools.values().filter(|t| t.is_data_tool())
    }

    /// Stable description of the registry, for determinism checks and the
    /// wire protocol.
    pub fn describe(&self) -> Value {
        let tools: Vec<Value> = self
            .tools
            .values()
            .map(|t| {
                Value::record([
                    ("name", Value::from(t.name.as_str())),
                    ("description", Value::from(t.description.as_str())),
                    (
                        "params",
                        Value::List(t.params.iter().map(|(p, _)| Value::from(p.as_str())).collect()),
                    ),
                    (
                        "output_fields",
                        Value::List(t.output_fields.iter().map(|f| Value::from(f.as_str())).collect()),
                    ),
                ])
            })
            .collect();
        Value::record([
            ("family", Value::from(self.family.name)),
            ("seed", Value::from(self.seed as f64)),
            ("edge_cases", Value::List(self.edge_cases.iter().map(|e| Value::from(e.as_str())).collect())),
            ("tools", Value::List(tools)),
        ])
    }

    fn entity_args(&self, entity: &str) -> Record {
        [(self.family.entity_param.to_string(), Value::from(entity))].into_iter().collect()
    }

    /// The oracle-relevant fields a data tool reports for `entity`; all null
    /// for edge-case entities.
    pub fn data_fields(&self, tool: &str, entity: &str) -> Result<Record, ToolError> {
        let def = self.family.tool(tool).ok_or_else(|| ToolError::UnknownTool(tool.to_string()))?;
        let args = self.entity_args(entity);
        let mut rng = response_rng(self.seed, self.family.name, tool, &args);
        Ok(self.fields(def, entity, &mut rng))
    }

    fn fields(&self, def: &ToolDef, entity: &str, rng: &mut ChaCha8Rng) -> Record {
        let edge = self.is_edge_case(entity);
        def.fields
            .iter()
            .map(|field| {
                let value = generate_field(field.kind, rng);
                (field.name.to_string(), if edge { Value::Null } else { value })
            })
            .collect()
    }

    fn data_response(&self, def: &ToolDef, args: &Record) -> Result<Value, ToolError> {
        let param = self.family.entity_param;
        let bad = |detail: String| ToolError::BadArguments { tool: def.name.to_string(), detail };
        if let Some(extra) = args.keys().find(|k| k.as_str() != param) {
            return Err(bad(format!("unexpected argument '{extra}'")));
        }
        let entity = match args.get(param) {
            Some(Value::Str(s)) => s.clone(),
            Some(other) => return Err(bad(format!("'{param}' must be a string, got {}", other.type_name()))),
            None => return Err(bad(format!("missing argument '{param}'"))),
        };
        let mut rng = response_rng(self.seed, self.family.name, def.name, args);
        let mut payload = self.fields(def, &entity, &mut rng);
        let oracle_bytes = Value::Record(payload.clone()).to_canonical_json().len();
        payload.insert("verbose_description".into(), Value::Str(filler(&mut rng, oracle_bytes * FILLER_FACTOR)));
        payload.insert(
            "metadata".into(),
            Value::record([
                ("endpoint", Value::from(format!("/{}/{}", self.family.name, def.name))),
                ("request_id", Value::from(format!("{:016x}", rng.gen::<u64>()))),
                ("api_version", Value::from("v2")),
            ]),
        );
        Ok(Value::Record(payload))
    }

    /// Runs one tool. Data tools are pure; workspace tools act on `workspace`.
    pub fn invoke(&self, workspace: &mut Workspace, tool: &str, args: &Record) -> Result<Value, ToolError> {
        if let Some(def) = self.family.tool(tool) {
            return self.data_response(def, args);
        }
        let spec = self.tools.get(tool).ok_or_else(|| ToolError::UnknownTool(tool.to_string()))?;
        let string_arg = |name: &str, required: bool| -> Result<Option<String>, ToolError> {
            match args.get(name) {
                Some(Value::Str(s)) => Ok(Some(s.clone())),
                Some(other) => Err(ToolError::BadArguments {
                    tool: tool.to_string(),
                    detail: format!("'{name}' must be a string, got {}", other.type_name()),
                }),
                None if required => Err(ToolError::BadArguments {
                    tool: tool.to_string(),
                    detail: format!("missing argument '{name}'"),
                }),
                None => Ok(None),
            }
        };
        if let Some(extra) = args.keys().find(|k| !spec.params.iter().any(|(p, _)| p == *k)) {
            return Err(ToolError::BadArguments { tool: tool.to_string(), detail: format!("unexpected argument '{extra}'") });
        }
        match tool {
            WRITE_FILE => {
                let path = string_arg("path", true)?.expect("required");
                let content = string_arg("content", true)?.expect("required");
                workspace.write_file(&path, &content)?;
                Ok(Value::from("File written successfully."))
            }
            READ_FILE => {
                let path = string_arg("path", true)?.expect("required");
                Ok(Value::Str(workspace.read_file(&path)?))
            }
            LIST_DIRECTORY => {
                let path = string_arg("path", false)?.unwrap_or_else(|| ".".into());
                Ok(Value::List(workspace.list_directory(&path)?.into_iter().map(Value::Str).collect()))
            }
            CLAIM_DONE => {
                let status = string_arg("status", true)?.expect("required");
                workspace.claim_done(&status)?;
                Ok(Value::from("Task marked as done."))
            }
            _ => Err(ToolError::UnknownTool(tool.to_string())),
        }
    }

    /// The per-entity record a correct solution emits: one group per required
    /// tool, then the derived metric fields.
    pub fn entity_record(&self, entity: &str, required_tools: &[String]) -> Result<Record, ToolError> {
        let mut record = Record::new();
        for tool in required_tools {
            record.insert(tool.clone(), Value::Record(self.data_fields(tool, entity)?));
        }
        for (k, v) in derived_fields(self.family, required_tools, &record) {
            record.insert(k, v);
        }
        Ok(record)
    }

    /// Expected output: entity name → entity record, in entity order.
    pub fn oracle_record(&self, entities: &[String], required_tools: &[String]) -> Result<Record, ToolError> {
        entities
            .iter()
            .map(|e| Ok((e.clone(), Value::Record(self.entity_record(e, required_tools)?))))
            .collect()
    }
}

fn generate_field(kind: FieldKind, rng: &mut ChaCha8Rng) -> Value {
    match kind {
        FieldKind::Int(lo, hi) => Value::from(rng.gen_range(lo..=hi)),
        FieldKind::Float(lo, hi) => Value::Number(round2(rng.gen_range(lo..=hi))),
        FieldKind::Choice(pool) => Value::from(pool[rng.gen_range(0..pool.len())]),
        FieldKind::Tags(pool, k) => {
            Value::List(sample(rng, pool.len(), k).into_iter().map(|i| Value::from(pool[i])).collect())
        }
        FieldKind::Flag => Value::Bool(rng.gen()),
        FieldKind::Ident(prefix) => Value::from(format!("{prefix}{:05}", rng.gen_range(0..100_000))),
    }
}

fn filler(rng: &mut ChaCha8Rng, len: usize) -> String {
    let mut text = String::with_capacity(len + 16);
    while text.len() < len {
        if !text.is_empty() {
            text.push(' ');
        }
        text.push_str(FILLER_WORDS[rng.gen_range(0..FILLER_WORDS.len())]);
    }
    text.truncate(len);
    text
}

/// Half-away-from-zero rounding to two decimals, identical to the script
/// builtin `round(x, 2)`.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Derived metric fields for one entity given its tool groups. Terms on tools
/// outside `required_tools` are dropped; any null input nulls the outputs.
pub fn derived_fields(family: &FamilyDef, required_tools: &[String], groups: &Record) -> Vec<(String, Value)> {
    let terms = family.active_terms(required_tools);
    if terms.is_empty() {
        return Vec::new();
    }
    let d = &family.derived;
    let mut acc = d.constant;
    let mut valid = true;
    for term in &terms {
        match groups.get(term.tool).and_then(|g| g.get(term.field)).and_then(Value::as_f64) {
            Some(x) => acc += term.weight * x,
            None => valid = false,
        }
    }
    let mut out = Vec::new();
    let score = valid.then(|| round2(acc));
    out.push((d.field.to_string(), score.map(Value::Number).unwrap_or(Value::Null)));
    if let Some(label) = d.label_field {
        let text = score.map(|s| band_label(family, s).to_string());
        out.push((label.to_string(), text.map(Value::Str).unwrap_or(Value::Null)));
    }
    out
}

pub fn band_label(family: &FamilyDef, score: f64) -> &'static str {
    let d = &family.derived;
    d.bands.iter().find(|b| score >= b.min).map(|b| b.label).unwrap_or(d.fallback_label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(family: &str, edge: &[&str]) -> Registry {
        build_registry(family, 7, &edge.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn args(k: &str, v: &str) -> Record {
        [(k.to_string(), Value::from(v))].into_iter().collect()
    }

    #[test]
    fn registries_are_deterministic() {
        let a = reg("gitlab-deep-analysis", &[]);
        let b = reg("gitlab-deep-analysis", &[]);
        assert_eq!(a.describe().to_json(), b.describe().to_json());
        let names: Vec<&str> = a.data_tools().map(|t| t.name.as_str()).collect();
        assert_eq!(&names[..5], &["get_project_info", "get_contributors", "get_commits", "get_branches", "get_issues"]);
        assert!(build_registry("nope", 7, &BTreeSet::new()).is_err());
    }

    #[test]
    fn profile_has_documented_schema_and_filler() {
        let r = reg("cat-facts-collector", &[]);
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        let out = r.invoke(&mut ws, "breed_profile", &args("breed_name", "Persian")).unwrap();
        for field in ["origin", "temperament", "life_span"] {
            assert!(out.get(field).and_then(Value::as_str).is_some(), "{field}");
        }
        let again = r.invoke(&mut ws, "breed_profile", &args("breed_name", "Persian")).unwrap();
        assert_eq!(out.to_canonical_json(), again.to_canonical_json());
        let oracle = r.data_fields("breed_profile", "Persian").unwrap();
        let oracle_bytes = Value::Record(oracle.clone()).to_canonical_json().len();
        assert!(out.to_canonical_json().len() >= 3 * oracle_bytes);
        for (k, v) in &oracle {
            assert_eq!(out.get(k), Some(v));
        }
    }

    #[test]
    fn edge_cases_null_every_oracle_field() {
        let r = reg("cat-facts-collector", &["Persian"]);
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        let out = r.invoke(&mut ws, "breed_profile", &args("breed_name", "Persian")).unwrap();
        for field in ["origin", "temperament", "life_span", "weight_kg"] {
            assert_eq!(out.get(field), Some(&Value::Null));
        }
        let clean = r.invoke(&mut ws, "breed_profile", &args("breed_name", "Siamese")).unwrap();
        assert!(clean.get("origin").unwrap().as_str().is_some());
    }

    #[test]
    fn argument_errors() {
        let r = reg("cat-facts-collector", &[]);
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        assert!(matches!(r.invoke(&mut ws, "nope", &Record::new()), Err(ToolError::UnknownTool(_))));
        assert!(matches!(r.invoke(&mut ws, "breed_profile", &Record::new()), Err(ToolError::BadArguments { .. })));
        let mut bad = args("breed_name", "Persian");
        bad.insert("extra".into(), Value::Null);
        assert!(matches!(r.invoke(&mut ws, "breed_profile", &bad), Err(ToolError::BadArguments { .. })));
        let numeric: Record = [("breed_name".to_string(), Value::from(3i64))].into_iter().collect();
        assert!(matches!(r.invoke(&mut ws, "breed_profile", &numeric), Err(ToolError::BadArguments { .. })));
    }

    #[test]
    fn workspace_tools_route_to_the_workspace() {
        let r = reg("cat-facts-collector", &[]);
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        let mut write = args("path", "a.json");
        write.insert("content".into(), Value::from("{}"));
        r.invoke(&mut ws, WRITE_FILE, &write).unwrap();
        assert_eq!(r.invoke(&mut ws, READ_FILE, &args("path", "a.json")).unwrap(), Value::from("{}"));
        assert_eq!(r.invoke(&mut ws, LIST_DIRECTORY, &Record::new()).unwrap(), Value::List(vec!["a.json".into()]));
        r.invoke(&mut ws, CLAIM_DONE, &args("status", "done")).unwrap();
        assert!(matches!(r.invoke(&mut ws, CLAIM_DONE, &args("status", "done")), Err(ToolError::Workspace(WorkspaceError::AlreadyDone))));
    }

    #[test]
    fn oracle_computes_gitlab_activity_score() {
        let r = reg("gitlab-deep-analysis", &[]);
        let tools: Vec<String> = r.family().tool_names()[..5].iter().map(|s| s.to_string()).collect();
        let rec = r.entity_record("gitaly", &tools).unwrap();
        let num = |tool: &str, field: &str| rec[tool].get(field).unwrap().as_f64().unwrap();
        // independent recomputation from the h1 prompt weights
        let expected = 0.4 * num("get_commits", "commit_count")
            + 0.3 * num("get_contributors", "contributor_count")
            + 0.2 * num("get_issues", "open_issues")
            + 0.1 * num("get_branches", "branch_count");
        let score = rec["activity_score"].as_f64().unwrap();
        assert!((score - expected).abs() <= 0.005 + 1e-9);
        let status = rec["health_status"].as_str().unwrap();
        let want = if score >= 70.0 { "healthy" } else if score >= 40.0 { "moderate" } else { "inactive" };
        assert_eq!(status, want);
        let keys: Vec<&str> = rec.keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["get_project_info", "get_contributors", "get_commits", "get_branches", "get_issues", "activity_score", "health_status"]);
        assert!(r.oracle_record(&[], &tools).unwrap().is_empty());
    }

    #[test]
    fn derived_fields_null_out_on_missing_inputs() {
        let fam = catalog::family("cocktail-menu-generator").unwrap();
        let tools = vec!["search".to_string(), "details".to_string()];
        let mut groups = Record::new();
        groups.insert("details".into(), Value::record([("ingredient_count", Value::Null)]));
        let out = derived_fields(fam, &tools, &groups);
        assert_eq!(out, vec![("estimated_prep_minutes".into(), Value::Null), ("complexity_rating".into(), Value::Null)]);
        groups.insert("details".into(), Value::record([("ingredient_count", Value::from(4i64))]));
        let out = derived_fields(fam, &tools, &groups);
        assert_eq!(out[0].1, Value::Number(8.0));
        assert_eq!(out[1].1, Value::from("Medium"));
        assert!(derived_fields(fam, &["search".to_string()], &groups).is_empty());
    }
}
