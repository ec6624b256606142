//! Deterministic synthetic agents for the five execution modes, and the
//! episode driver that accounts for every turn they take.

pub mod compose;
mod modes;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fabric::{Registry, ToolCallRecord, ToolError, Workspace, CLAIM_DONE};
use crate::harness::accounting::{count_tokens, enforce_limits, LimitReason, Limits, Progress, TokenModel, Verdict};
use crate::library::{
    call_primitive, canonical_primitive, execute_transient, LibraryError, PrimitiveError, SkillLibrary, EXECUTE_SKILL,
};
use crate::script::{DispatchError, ToolDispatcher, DEFAULT_STEP_BUDGET};
use crate::suite::{self, inject_cross_summary, render_prompt, ScoreReport, Task};
use crate::value::{Record, Value};

pub use compose::{compose_direct, compose_family_skill, compose_skill, compose_tower, skill_name, skill_signature, ComposedSkill};
pub use modes::{run_adversarial, run_baseline, run_direct_exec, run_hierarchical, run_skill, FALLBACK_THRESHOLD};

/// Tool name of the one-off script runner offered in direct mode.
pub const EXEC_SCRIPT: &str = "exec_script";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Base,
    Skill,
    Hier,
    Direct,
    Static,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Base, Mode::Skill, Mode::Hier, Mode::Direct, Mode::Static];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Base => "base",
            Mode::Skill => "skill",
            Mode::Hier => "hier",
            Mode::Direct => "direct",
            Mode::Static => "static",
        }
    }

    pub fn uses_library(self) -> bool {
        matches!(self, Mode::Skill | Mode::Hier | Mode::Static)
    }

    fn preamble(self) -> &'static str {
        match self {
            Mode::Base => "You are a tool-using agent. Complete the task with the available tools, write the output file, then call claim_done.\n\n",
            Mode::Skill => concat!(
                "You are a tool-using agent with a skill library. Primitives: list_skills(); ",
                "save_skill(skill_name, script_code, parameters, description); execute_skill(skill_name, args); get_skill(skill_name). ",
                "Reuse a matching skill when one exists; otherwise compose one from the tool schemas, save it, and execute it per entity. ",
                "If a skill fails 3 times for an entity, fall back to direct tool calls. Write the output file, then call claim_done.\n\n"
            ),
            Mode::Hier => concat!(
                "You are a tool-using agent with a hierarchical skill library. Primitives: list_skills(); ",
                "save_skill(skill_name, script_code, parameters, description); execute_skill(skill_name, args); get_skill(skill_name). ",
                "Skills may invoke other skills with call_tool(\"execute_skill\", ...). Build low, medium and high level skills, ",
                "execute the top one, write the output file, then call claim_done.\n\n"
            ),
            Mode::Direct => concat!(
                "You are a tool-using agent. exec_script(script_code) runs a one-off script with call_tool access; nothing is saved. ",
                "Write the output file, then call claim_done.\n\n"
            ),
            Mode::Static => concat!(
                "You are a tool-using agent with a read-only skill library. Primitives: list_skills(); execute_skill(skill_name, args); ",
                "get_skill(skill_name). Execute inherited skills where they fit; fall back to direct tool calls otherwise. ",
                "Write the output file, then call claim_done.\n\n"
            ),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL.into_iter().find(|m| m.as_str() == s).ok_or_else(|| PolicyError::UnknownMode(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("unknown mode '{0}'")]
    UnknownMode(String),
    #[error(transparent)]
    Tool(#[from] ToolError),
    #[error(transparent)]
    Library(#[from] LibraryError),
    #[error(transparent)]
    Workspace(#[from] crate::fabric::WorkspaceError),
}

/// What one episode acts on.
pub struct Env {
    pub registry: Registry,
    pub workspace: Workspace,
    pub library: SkillLibrary,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EpisodeConfig {
    pub limits: Limits,
    pub token_model: TokenModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillEvent {
    /// save | execute | list | get
    pub op: String,
    pub name: String,
    /// Nesting level; 1 for agent-issued primitives.
    pub level: u32,
    /// success | failed for executions, ok | rejected otherwise.
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub turn: u32,
    pub role: String,
    pub bytes_in: u64,
    pub bytes_out: u64,
    pub tool_calls: Vec<ToolCallRecord>,
    pub skill_events: Vec<SkillEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counters {
    pub in_tokens: u64,
    pub out_tokens: u64,
    pub turn_count: u32,
    pub tool_call_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FinalStatus {
    pub claimed_done: bool,
    pub limit_exceeded: Option<LimitReason>,
    pub aborted: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeTrace {
    pub task_id: String,
    pub mode: Mode,
    pub turns: Vec<TurnRecord>,
    pub counters: Counters,
    pub final_status: FinalStatus,
}

impl EpisodeTrace {
    fn new(task_id: &str, mode: Mode) -> Self {
        EpisodeTrace {
            task_id: task_id.to_string(),
            mode,
            turns: Vec::new(),
            counters: Counters::default(),
            final_status: FinalStatus::default(),
        }
    }

    pub fn skill_events(&self) -> impl Iterator<Item = &SkillEvent> {
        self.turns.iter().flat_map(|t| t.skill_events.iter())
    }

    pub fn tool_calls(&self) -> impl Iterator<Item = &ToolCallRecord> {
        self.turns.iter().flat_map(|t| t.tool_calls.iter())
    }

    pub fn count_calls(&self, tool: &str) -> usize {
        self.tool_calls().filter(|c| c.tool == tool).count()
    }

    /// One JSON object per turn, newline-terminated.
    pub fn to_jsonl(&self) -> String {
        self.turns
            .iter()
            .map(|t| serde_json::to_string(t).expect("turn serializes") + "\n")
            .collect()
    }
}

/// The trace and rubric score of a finished episode.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeResult {
    pub trace: EpisodeTrace,
    pub score: ScoreReport,
}

/// Raised when the episode may not take another turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Halt;

/// Routes script `call_tool`s to the registry and workspace.
pub struct RegistryTools<'a> {
    pub registry: &'a Registry,
    pub workspace: &'a mut Workspace,
}

impl ToolDispatcher for RegistryTools<'_> {
    fn dispatch(&mut self, tool: &str, args: Record) -> Result<Value, DispatchError> {
        self.registry.invoke(self.workspace, tool, &args).map_err(|e| match e {
            ToolError::UnknownTool(t) => DispatchError::UnknownTool(t),
            other => DispatchError::Failed(other.to_string()),
        })
    }
}

fn error_value(kind: &str, detail: Value) -> Value {
    Value::record([("error", Value::record([("kind", Value::from(kind)), ("detail", detail)]))])
}

/// One running episode: every tool call is one turn whose input is the whole
/// context so far and whose output is the serialized action.
pub struct Episode<'a> {
    task: &'a Task,
    mode: Mode,
    env: &'a mut Env,
    config: EpisodeConfig,
    trace: EpisodeTrace,
    context_bytes: u64,
    started: Instant,
}

impl<'a> Episode<'a> {
    fn new(task: &'a Task, mode: Mode, env: &'a mut Env, config: EpisodeConfig, prompt: &str) -> Self {
        let context_bytes = (mode.preamble().len() + prompt.len()) as u64;
        Episode { task, mode, env, config, trace: EpisodeTrace::new(&task.id, mode), context_bytes, started: Instant::now() }
    }

    pub fn task(&self) -> &Task {
        self.task
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn registry(&self) -> &Registry {
        &self.env.registry
    }

    pub fn trace(&self) -> &EpisodeTrace {
        &self.trace
    }

    /// Takes one turn issuing `tool(args)` and returns the observation.
    pub fn act(&mut self, tool: &str, args: Record) -> Result<Value, Halt> {
        if self.trace.final_status.limit_exceeded.is_some() {
            return Err(Halt);
        }
        let model = self.config.token_model;
        let action = Value::record([("tool", Value::from(tool)), ("args", Value::Record(args.clone()))]).to_json();
        let bytes_out = action.len() as u64;
        let bytes_in = self.context_bytes;
        let request_in = count_tokens(bytes_in, &model);
        let request_out = count_tokens(bytes_out, &model);
        let c = self.trace.counters;
        let progress = Progress {
            turn: c.turn_count + 1,
            in_tokens: c.in_tokens + request_in,
            out_tokens: c.out_tokens + request_out,
            request_in_tokens: request_in,
            elapsed: self.started.elapsed(),
        };
        if let Verdict::Terminate(reason) = enforce_limits(&progress, &self.config.limits) {
            self.trace.final_status.limit_exceeded = Some(reason);
            return Err(Halt);
        }

        let turn = progress.turn;
        let (result, ok, skill_events) = self.execute(tool, &args);
        if ok && tool == CLAIM_DONE {
            self.trace.final_status.claimed_done = true;
        }
        let record = ToolCallRecord::new(turn, tool, args, &result, ok);
        self.context_bytes += bytes_out + result.json_len() as u64;
        let counters = &mut self.trace.counters;
        counters.turn_count = turn;
        counters.in_tokens = progress.in_tokens;
        counters.out_tokens = progress.out_tokens;
        counters.tool_call_count += 1;
        self.trace.turns.push(TurnRecord {
            turn,
            role: "assistant".into(),
            bytes_in,
            bytes_out,
            tool_calls: vec![record],
            skill_events,
        });
        Ok(result)
    }

    fn execute(&mut self, tool: &str, args: &Record) -> (Value, bool, Vec<SkillEvent>) {
        let env = &mut *self.env;
        if let Some(primitive) = canonical_primitive(tool) {
            if !self.mode.uses_library() {
                return (error_value("unknown_tool", Value::from(format!("unknown tool '{tool}'"))), false, Vec::new());
            }
            let mut tools = RegistryTools { registry: &env.registry, workspace: &mut env.workspace };
            let outcome = call_primitive(&mut env.library, tool, args, &mut tools);
            let mut events: Vec<SkillEvent> = env
                .library
                .take_execution_log()
                .into_iter()
                .map(|e| SkillEvent {
                    op: "execute".into(),
                    name: e.skill,
                    level: e.level,
                    outcome: if e.success { "success" } else { "failed" }.into(),
                })
                .collect();
            let name = args
                .get("skill_name")
                .or_else(|| args.get("macro_name"))
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string();
            let op = primitive.trim_end_matches("_skill").trim_end_matches("_skills");
            return match outcome {
                Ok(value) => {
                    let ok = primitive != EXECUTE_SKILL || value.get("status") == Some(&Value::from("success"));
                    if primitive != EXECUTE_SKILL {
                        events.push(SkillEvent { op: op.into(), name, level: 1, outcome: "ok".into() });
                    }
                    (value, ok, events)
                }
                Err(PrimitiveError { kind, detail }) => {
                    events.push(SkillEvent { op: op.into(), name, level: 1, outcome: "rejected".into() });
                    (error_value(&kind, detail), false, events)
                }
            };
        }
        if tool == EXEC_SCRIPT && self.mode == Mode::Direct {
            let Some(Value::Str(script)) = args.get("script_code") else {
                return (error_value("bad_arguments", Value::from("missing argument 'script_code'")), false, Vec::new());
            };
            let mut tools = RegistryTools { registry: &env.registry, workspace: &mut env.workspace };
            let outcome = execute_transient(script, &mut tools, DEFAULT_STEP_BUDGET);
            return (outcome.to_value(), outcome.is_success(), Vec::new());
        }
        match env.registry.invoke(&mut env.workspace, tool, args) {
            Ok(value) => (value, true, Vec::new()),
            Err(e) => (error_value(e.kind(), Value::from(e.to_string())), false, Vec::new()),
        }
    }
}

/// The standard policy for each mode; static mode runs the skill policy
/// against a locked library.
pub fn policy_for(mode: Mode) -> fn(&mut Episode) -> Result<(), Halt> {
    match mode {
        Mode::Base => run_baseline,
        Mode::Skill | Mode::Static => run_skill,
        Mode::Hier => run_hierarchical,
        Mode::Direct => run_direct_exec,
    }
}

/// Runs `policy` on `task` and scores the workspace it leaves behind.
pub fn run_policy(
    task: &Task,
    mode: Mode,
    env: &mut Env,
    config: EpisodeConfig,
    policy: fn(&mut Episode) -> Result<(), Halt>,
) -> Result<EpisodeResult, PolicyError> {
    if mode == Mode::Hier {
        env.library.set_hierarchical(true);
    }
    if mode == Mode::Static {
        env.library.lock();
    }
    let prompt = if mode == Mode::Static { inject_cross_summary(&render_prompt(task), &env.library) } else { render_prompt(task) };
    let mut episode = Episode::new(task, mode, env, config, &prompt);
    let _ = policy(&mut episode);
    let trace = episode.trace;
    let expected = suite::oracle(&env.registry, task)?;
    let score = suite::score(task, &env.workspace, &expected);
    Ok(EpisodeResult { trace, score })
}

pub fn run_episode(task: &Task, mode: Mode, env: &mut Env, config: EpisodeConfig) -> Result<EpisodeResult, PolicyError> {
    run_policy(task, mode, env, config, policy_for(mode))
}

/// Which half of a static-transfer run an environment is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Source,
    Target,
}

/// Phase 1 runs the skill policy over `source` tasks, accumulating one
/// library per family. Phase 2 copies that library into each target's
/// environment, locks it, and runs the reuse policy with the cross-task
/// summary in the prompt.
pub fn run_static_phases(
    source: &[Task],
    target: &[Task],
    config: EpisodeConfig,
    mut env_factory: impl FnMut(&Task, Phase) -> Result<Env, PolicyError>,
) -> Result<(Vec<EpisodeResult>, Vec<EpisodeResult>), PolicyError> {
    let mut libraries: std::collections::HashMap<String, SkillLibrary> = Default::default();
    let mut phase1 = Vec::with_capacity(source.len());
    for task in source {
        let mut env = env_factory(task, Phase::Source)?;
        if let Some(acc) = libraries.get(&task.family) {
            adopt_library(&mut env, acc)?;
        }
        phase1.push(run_episode(task, Mode::Skill, &mut env, config)?);
        libraries.insert(task.family.clone(), env.library);
    }
    let mut phase2 = Vec::with_capacity(target.len());
    for task in target {
        let mut env = env_factory(task, Phase::Target)?;
        if let Some(acc) = libraries.get(&task.family) {
            adopt_library(&mut env, acc)?;
        }
        phase2.push(run_episode(task, Mode::Static, &mut env, config)?);
    }
    Ok((phase1, phase2))
}

/// Replaces the environment's library with a copy of `source`, persisted at
/// the environment's cache path when it has one.
fn adopt_library(env: &mut Env, source: &SkillLibrary) -> Result<(), PolicyError> {
    let path = env.library.cache_path().map(|p| p.to_path_buf());
    let mut lib = source.clone();
    lib.take_execution_log();
    if let Some(path) = path {
        lib.persist_to(path)?;
    }
    env.library = lib;
    Ok(())
}
