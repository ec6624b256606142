//! The skill library: four primitives over a persisted cache, the
//! three-stage verifier, nesting-depth control, and locked mode.

mod cache;
mod primitive;
mod quality;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::script::{
    evaluate, free_variables, DispatchError, RuntimeIssue, RuntimeIssueKind, ScriptSource, SyntaxIssue,
    ToolDispatcher, DEFAULT_STEP_BUDGET,
};
use crate::value::{Record, Value};

pub use cache::to_spaced_json;
pub use primitive::{call_primitive, PrimitiveError};
pub use quality::{is_empty_leaf, quality_check, QualityFinding, EMPTY_RATIO_LIMIT};

pub const DEFAULT_NESTING_LIMIT: u32 = 10;

pub const SAVE_SKILL: &str = "save_skill";
pub const EXECUTE_SKILL: &str = "execute_skill";
pub const LIST_SKILLS: &str = "list_skills";
pub const GET_SKILL: &str = "get_skill";

/// Maps the figure-style `*_macro` names onto the primitive names.
pub fn canonical_primitive(name: &str) -> Option<&'static str> {
    match name {
        SAVE_SKILL | "save_macro" => Some(SAVE_SKILL),
        EXECUTE_SKILL | "execute_macro" => Some(EXECUTE_SKILL),
        LIST_SKILLS | "list_macros" => Some(LIST_SKILLS),
        GET_SKILL | "get_macro" => Some(GET_SKILL),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionStats {
    pub success_count: u64,
    pub failure_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillEntry {
    pub name: String,
    pub script: ScriptSource,
    pub parameters: Vec<String>,
    pub description: String,
    pub version: u32,
    pub execution_stats: ExecutionStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifierStage {
    Syntax,
    Runtime,
    Quality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerifierDetail {
    Syntax(SyntaxIssue),
    Runtime(RuntimeIssue),
    Quality(QualityFinding),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub stage: VerifierStage,
    pub passed: bool,
    pub detail: VerifierDetail,
}

impl VerifierReport {
    pub fn syntax(issue: SyntaxIssue) -> Self {
        VerifierReport { stage: VerifierStage::Syntax, passed: false, detail: VerifierDetail::Syntax(issue) }
    }

    pub fn runtime(issue: RuntimeIssue) -> Self {
        VerifierReport { stage: VerifierStage::Runtime, passed: false, detail: VerifierDetail::Runtime(issue) }
    }

    pub fn quality(finding: QualityFinding) -> Self {
        VerifierReport { stage: VerifierStage::Quality, passed: finding.passed, detail: VerifierDetail::Quality(finding) }
    }

    pub fn runtime_issue(&self) -> Option<&RuntimeIssue> {
        match &self.detail {
            VerifierDetail::Runtime(issue) => Some(issue),
            _ => None,
        }
    }

    pub fn to_value(&self) -> Value {
        Value::from(serde_json::to_value(self).expect("report serializes"))
    }
}

impl fmt::Display for VerifierReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.detail {
            VerifierDetail::Syntax(issue) => write!(f, "{issue}\n{}", issue.context_snippet),
            VerifierDetail::Runtime(issue) => write!(f, "{issue}"),
            VerifierDetail::Quality(q) => write!(
                f,
                "quality check failed: {} of {} output fields empty ({:.0}%)",
                q.empty_leaves,
                q.total_leaves,
                q.ratio * 100.0
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("skill library is locked (static reuse): cannot {0}")]
    Locked(&'static str),
    #[error("unknown skill '{0}'")]
    UnknownSkill(String),
    #[error("invalid skill name '{0}'")]
    InvalidName(String),
    #[error("script_code is empty")]
    EmptyScript,
    #[error("Skill save failed: {0}")]
    Verifier(Box<VerifierReport>),
    #[error("parameters do not cover the script's free variables; missing: {}", missing.join(", "))]
    ParameterMismatch { missing: Vec<String> },
    #[error("duplicate parameter '{0}'")]
    DuplicateParameter(String),
    #[error("malformed skill cache {path}: field '{field}' {detail}")]
    Cache { path: String, field: String, detail: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl LibraryError {
    pub fn kind(&self) -> &'static str {
        match self {
            LibraryError::Locked(_) => "locked",
            LibraryError::UnknownSkill(_) => "unknown_skill",
            LibraryError::InvalidName(_) => "invalid_name",
            LibraryError::EmptyScript => "empty_script",
            LibraryError::Verifier(_) => "syntax_error",
            LibraryError::ParameterMismatch { .. } => "parameter_mismatch",
            LibraryError::DuplicateParameter(_) => "duplicate_parameter",
            LibraryError::Cache { .. } => "cache_error",
            LibraryError::Io { .. } => "io_error",
        }
    }

    /// Structured detail for wire responses.
    pub fn detail(&self) -> Value {
        match self {
            LibraryError::Verifier(report) => report.to_value(),
            LibraryError::ParameterMismatch { missing } => Value::record([
                ("message", Value::from(self.to_string())),
                ("missing", Value::List(missing.iter().map(|m| Value::from(m.as_str())).collect())),
            ]),
            other => Value::from(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecutionStatus {
    Success,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionOutcome {
    pub status: ExecutionStatus,
    /// Payload on success, structured error on failure.
    pub result: Value,
    pub depth_used: u32,
    #[serde(skip)]
    pub report: Option<VerifierReport>,
}

impl ExecutionOutcome {
    pub fn is_success(&self) -> bool {
        self.status == ExecutionStatus::Success
    }

    fn failed(report: VerifierReport, depth_used: u32) -> Self {
        let result = match &report.detail {
            VerifierDetail::Syntax(issue) => Value::record([
                ("error_type", Value::from("syntax_error")),
                ("message", Value::from(issue.message.as_str())),
                ("line", Value::from(issue.line)),
                ("context", Value::from(issue.context_snippet.as_str())),
            ]),
            VerifierDetail::Runtime(issue) => {
                let mut rec = Record::new();
                rec.insert("error_type".into(), Value::from(issue.kind.as_str()));
                if let Value::Record(body) = issue.to_value() {
                    for (k, v) in body {
                        if k != "kind" {
                            rec.insert(k, v);
                        }
                    }
                }
                Value::Record(rec)
            }
            VerifierDetail::Quality(finding) => {
                let mut rec = Record::new();
                rec.insert("error_type".into(), Value::from("quality_check_failed"));
                rec.insert("message".into(), Value::from(report.to_string()));
                rec.insert("finding".into(), Value::from(serde_json::to_value(finding).expect("finding serializes")));
                Value::Record(rec)
            }
        };
        ExecutionOutcome { status: ExecutionStatus::Failed, result, depth_used, report: Some(report) }
    }

    /// `{"status": ..., "result": ...}` as returned to agents.
    pub fn to_value(&self) -> Value {
        Value::record([
            ("status", Value::from(match self.status {
                ExecutionStatus::Success => "success",
                ExecutionStatus::Failed => "failed",
            })),
            ("result", self.result.clone()),
            ("depth_used", Value::from(self.depth_used)),
        ])
    }
}

/// One skill execution, nested ones included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionEvent {
    pub skill: String,
    /// Nesting level of this execution; 1 for an agent-issued execute.
    pub level: u32,
    pub success: bool,
}

/// Read-only view returned by `get_skill`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillView {
    pub script_code: String,
    pub parameters: Vec<String>,
    pub version: u32,
}

impl SkillView {
    pub fn to_value(&self) -> Value {
        Value::from(serde_json::to_value(self).expect("view serializes"))
    }
}

#[derive(Debug, Clone)]
pub struct SkillLibrary {
    entries: IndexMap<String, SkillEntry>,
    locked: bool,
    cache_path: Option<PathBuf>,
    hierarchical: bool,
    nesting_limit: u32,
    step_budget: u64,
    log: Vec<ExecutionEvent>,
}

impl Default for SkillLibrary {
    fn default() -> Self {
        SkillLibrary::new()
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

impl SkillLibrary {
    /// An in-memory library with no backing file.
    pub fn new() -> Self {
        SkillLibrary {
            entries: IndexMap::new(),
            locked: false,
            cache_path: None,
            hierarchical: false,
            nesting_limit: DEFAULT_NESTING_LIMIT,
            step_budget: DEFAULT_STEP_BUDGET,
            log: Vec::new(),
        }
    }

    /// Loads the cache at `path`; a missing file yields an empty library
    /// bound to that path.
    pub fn load(path: impl Into<PathBuf>) -> Result<Self, LibraryError> {
        let path = path.into();
        let mut lib = SkillLibrary::new();
        match fs::read_to_string(&path) {
            Ok(text) => lib.entries = cache::parse(&path, &text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(LibraryError::Io { path: path.display().to_string(), source }),
        }
        lib.cache_path = Some(path);
        Ok(lib)
    }

    /// Binds the library to `path` and writes it there.
    pub fn persist_to(&mut self, path: impl Into<PathBuf>) -> Result<(), LibraryError> {
        self.cache_path = Some(path.into());
        self.persist()
    }

    /// Rewrites the cache file atomically; a no-op without a backing file.
    pub fn persist(&self) -> Result<(), LibraryError> {
        match &self.cache_path {
            Some(path) => cache::write_atomic(path, &self.cache_text()),
            None => Ok(()),
        }
    }

    /// The exact bytes `persist` writes.
    pub fn cache_text(&self) -> String {
        cache::render(&self.entries)
    }

    pub fn cache_path(&self) -> Option<&Path> {
        self.cache_path.as_deref()
    }

    pub fn lock(&mut self) {
        self.locked = true;
    }

    pub fn is_locked(&self) -> bool {
        self.locked
    }

    pub fn set_hierarchical(&mut self, enabled: bool) {
        self.hierarchical = enabled;
    }

    pub fn is_hierarchical(&self) -> bool {
        self.hierarchical
    }

    pub fn set_nesting_limit(&mut self, limit: u32) {
        self.nesting_limit = limit;
    }

    pub fn nesting_limit(&self) -> u32 {
        self.nesting_limit
    }

    pub fn set_step_budget(&mut self, budget: u64) {
        self.step_budget = budget.max(1);
    }

    pub fn entries(&self) -> impl Iterator<Item = &SkillEntry> {
        self.entries.values()
    }

    pub fn entry(&self, name: &str) -> Option<&SkillEntry> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Executions recorded since the last call, nested ones included.
    pub fn take_execution_log(&mut self) -> Vec<ExecutionEvent> {
        std::mem::take(&mut self.log)
    }

    pub fn save_skill(
        &mut self,
        name: &str,
        script: &str,
        parameters: &[String],
        description: &str,
    ) -> Result<String, LibraryError> {
        if self.locked {
            return Err(LibraryError::Locked("save skills"));
        }
        if !valid_name(name) {
            return Err(LibraryError::InvalidName(name.to_string()));
        }
        let source = ScriptSource::new(script).map_err(|_| LibraryError::EmptyScript)?;
        let ast = source.parse().map_err(|issue| LibraryError::Verifier(Box::new(VerifierReport::syntax(issue))))?;
        for (i, p) in parameters.iter().enumerate() {
            if parameters[..i].contains(p) {
                return Err(LibraryError::DuplicateParameter(p.clone()));
            }
        }
        let missing: Vec<String> = free_variables(&ast).into_iter().filter(|v| !parameters.contains(v)).collect();
        if !missing.is_empty() {
            return Err(LibraryError::ParameterMismatch { missing });
        }
        let (version, execution_stats) = match self.entries.get(name) {
            Some(prev) => (prev.version + 1, prev.execution_stats),
            None => (1, ExecutionStats::default()),
        };
        self.entries.insert(
            name.to_string(),
            SkillEntry {
                name: name.to_string(),
                script: source,
                parameters: parameters.to_vec(),
                description: description.to_string(),
                version,
                execution_stats,
            },
        );
        self.persist()?;
        Ok(format!("Skill '{name}' saved successfully."))
    }

    /// `Skill <i>: <name> -- <description>`, one line per entry.
    pub fn list_skills(&self) -> String {
        self.entries
            .values()
            .enumerate()
            .map(|(i, e)| format!("Skill {}: {} -- {}", i + 1, e.name, e.description))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn get_skill(&self, name: &str) -> Result<SkillView, LibraryError> {
        let e = self.entries.get(name).ok_or_else(|| LibraryError::UnknownSkill(name.to_string()))?;
        Ok(SkillView { script_code: e.script.as_str().to_string(), parameters: e.parameters.clone(), version: e.version })
    }

    /// Runs a saved skill as an agent-facing call at nesting `depth`
    /// (0 for a top-level execute). The result passes the quality check or
    /// the outcome is failed.
    pub fn execute_skill(
        &mut self,
        name: &str,
        args: &Record,
        dispatcher: &mut dyn ToolDispatcher,
        depth: u32,
    ) -> Result<ExecutionOutcome, LibraryError> {
        if !self.entries.contains_key(name) {
            return Err(LibraryError::UnknownSkill(name.to_string()));
        }
        let outcome = self.run(name, args, dispatcher, depth + 1);
        let outcome = match outcome {
            Ok((value, depth_used)) => {
                let finding = quality_check(&value);
                if finding.passed {
                    ExecutionOutcome { status: ExecutionStatus::Success, result: value, depth_used, report: None }
                } else {
                    ExecutionOutcome::failed(VerifierReport::quality(finding), depth_used)
                }
            }
            Err((report, depth_used)) => ExecutionOutcome::failed(report, depth_used),
        };
        self.record(name, depth + 1, outcome.is_success());
        Ok(outcome)
    }

    fn record(&mut self, name: &str, level: u32, success: bool) {
        self.log.push(ExecutionEvent { skill: name.to_string(), level, success });
        if self.locked {
            return;
        }
        if let Some(entry) = self.entries.get_mut(name) {
            if success {
                entry.execution_stats.success_count += 1;
            } else {
                entry.execution_stats.failure_count += 1;
            }
        }
    }

    /// Evaluates `name` at `level`, returning the raw result and depth used.
    fn run(
        &mut self,
        name: &str,
        args: &Record,
        dispatcher: &mut dyn ToolDispatcher,
        level: u32,
    ) -> Result<(Value, u32), (VerifierReport, u32)> {
        let entry = self.entries[name].clone();
        let inputs = args.clone();
        let issue = |kind: RuntimeIssueKind, message: String| RuntimeIssue { kind, message, trace: Vec::new(), inputs: inputs.clone() };
        if level > self.nesting_limit {
            let message = format!("maximum skill nesting depth {} exceeded", self.nesting_limit);
            return Err((VerifierReport::runtime(issue(RuntimeIssueKind::DepthExceeded, message)), level - 1));
        }
        let ast = entry.script.parse().map_err(|syntax| (VerifierReport::syntax(syntax), 1))?;
        if let Some(extra) = args.keys().find(|k| !entry.parameters.contains(k)) {
            let message = format!("{name}() got an unexpected argument '{extra}'");
            return Err((VerifierReport::runtime(issue(RuntimeIssueKind::ArityError, message)), 1));
        }
        if let Some(missing) = entry.parameters.iter().find(|p| !args.contains_key(*p)) {
            let message = format!("{name}() missing required argument '{missing}'");
            return Err((VerifierReport::runtime(issue(RuntimeIssueKind::ArityError, message)), 1));
        }
        let budget = self.step_budget;
        let mut nested = NestedDispatch { lib: self, inner: dispatcher, level, max_child: 0 };
        let result = evaluate(&ast, args, &mut nested, budget);
        let depth_used = 1 + nested.max_child;
        result.map(|v| (v, depth_used)).map_err(|mut issue| {
            for frame in issue.trace.iter_mut().filter(|f| f.skill.is_none()) {
                frame.skill = Some(name.to_string());
            }
            (VerifierReport::runtime(issue), depth_used)
        })
    }
}

/// Routes skill primitives called from inside a script; everything else goes
/// to the episode's dispatcher.
struct NestedDispatch<'a> {
    lib: &'a mut SkillLibrary,
    inner: &'a mut dyn ToolDispatcher,
    level: u32,
    max_child: u32,
}

impl ToolDispatcher for NestedDispatch<'_> {
    fn dispatch(&mut self, tool: &str, args: Record) -> Result<Value, DispatchError> {
        let Some(primitive) = canonical_primitive(tool) else {
            return self.inner.dispatch(tool, args);
        };
        if !self.lib.hierarchical || primitive != EXECUTE_SKILL {
            return Err(DispatchError::Failed(format!("skills cannot call '{tool}' from within a skill")));
        }
        let name = match args.get("skill_name").or_else(|| args.get("macro_name")) {
            Some(Value::Str(s)) => s.clone(),
            _ => return Err(DispatchError::Failed("execute_skill needs a string skill_name".into())),
        };
        let nested_args = match args.get("args") {
            None | Some(Value::Null) => Record::new(),
            Some(Value::Record(r)) => r.clone(),
            Some(other) => return Err(DispatchError::Failed(format!("args must be a record, got {}", other.type_name()))),
        };
        if !self.lib.entries.contains_key(&name) {
            return Err(DispatchError::Failed(format!("unknown skill '{name}'")));
        }
        let level = self.level + 1;
        if level > self.lib.nesting_limit {
            self.lib.record(&name, level, false);
            return Err(DispatchError::DepthExceeded(format!(
                "maximum skill nesting depth {} exceeded calling '{name}'",
                self.lib.nesting_limit
            )));
        }
        let outcome = self.lib.run(&name, &nested_args, &mut *self.inner, level);
        let child_depth = match &outcome {
            Ok((_, d)) | Err((_, d)) => *d,
        };
        self.max_child = self.max_child.max(child_depth);
        self.lib.record(&name, level, outcome.is_ok());
        match outcome {
            Ok((value, _)) => Ok(value),
            Err((report, _)) => match report.detail {
                VerifierDetail::Runtime(issue) => Err(DispatchError::Nested(issue)),
                VerifierDetail::Syntax(syntax) => Err(DispatchError::Failed(format!("skill '{name}': {syntax}"))),
                VerifierDetail::Quality(_) => unreachable!("nested results are not quality-checked"),
            },
        }
    }
}

/// Runs a one-off script that never enters the library; used by direct
/// execution. The result is quality-checked like a skill result.
pub fn execute_transient(source: &str, dispatcher: &mut dyn ToolDispatcher, budget: u64) -> ExecutionOutcome {
    let ast = match ScriptSource::new(source) {
        Ok(src) => match src.parse() {
            Ok(ast) => ast,
            Err(issue) => return ExecutionOutcome::failed(VerifierReport::syntax(issue), 1),
        },
        Err(_) => {
            let issue = SyntaxIssue::new(source, 1, "script is empty");
            return ExecutionOutcome::failed(VerifierReport::syntax(issue), 1);
        }
    };
    match evaluate(&ast, &Record::new(), dispatcher, budget) {
        Ok(value) => {
            let finding = quality_check(&value);
            if finding.passed {
                ExecutionOutcome { status: ExecutionStatus::Success, result: value, depth_used: 1, report: None }
            } else {
                ExecutionOutcome::failed(VerifierReport::quality(finding), 1)
            }
        }
        Err(issue) => ExecutionOutcome::failed(VerifierReport::runtime(issue), 1),
    }
}

#[cfg(test)]
mod tests;
