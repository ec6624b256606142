use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::metrics::{aggregate, RunMetrics};
use crate::fabric::{build_registry, RunDir, WorkspaceError};
use crate::library::{SkillLibrary, DEFAULT_NESTING_LIMIT};
use crate::policy::{run_episode, run_static_phases, Env, EpisodeConfig, EpisodeResult, Mode, Phase, PolicyError};
use crate::suite::{Difficulty, Task};

pub const METRICS_FILE: &str = "metrics.json";
pub const CACHE_FILE: &str = "skill_cache.json";
/// Subdirectory holding the source-phase tasks of a static-transfer run.
pub const SOURCE_PHASE_DIR: &str = "phase1";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Workspace(#[from] WorkspaceError),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid {what} in {path}: {detail}")]
    Parse { what: &'static str, path: String, detail: String },
    #[error("{0}")]
    Config(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.display().to_string(), source }
}

/// Which difficulty feeds the other in a static-transfer run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Transfer {
    #[default]
    EasyToHard,
    HardToEasy,
}

impl FromStr for Transfer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "easy-hard" => Ok(Transfer::EasyToHard),
            "hard-easy" => Ok(Transfer::HardToEasy),
            other => Err(format!("unknown transfer '{other}' (expected easy-hard or hard-easy)")),
        }
    }
}

impl Transfer {
    fn split(self) -> (Difficulty, Difficulty) {
        match self {
            Transfer::EasyToHard => (Difficulty::Easy, Difficulty::Hard),
            Transfer::HardToEasy => (Difficulty::Hard, Difficulty::Easy),
        }
    }
}

/// Entities per family whose profile fields come back null.
pub type EdgeCases = BTreeMap<String, BTreeSet<String>>;

/// Reads `{"family": ["entity", ...], ...}`.
pub fn read_edge_cases(path: &Path) -> Result<EdgeCases, HarnessError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse { what: "edge-case file", path: path.display().to_string(), detail: e.to_string() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub seed: u64,
    pub edge_cases: EdgeCases,
    pub nesting_limit: u32,
    pub transfer: Transfer,
    pub episode: EpisodeConfig,
    /// Parallel episodes; 0 uses every core.
    pub workers: usize,
}

impl RunConfig {
    pub fn new(mode: Mode, seed: u64) -> Self {
        RunConfig {
            mode,
            seed,
            edge_cases: EdgeCases::new(),
            nesting_limit: DEFAULT_NESTING_LIMIT,
            transfer: Transfer::default(),
            episode: EpisodeConfig::default(),
            workers: 0,
        }
    }
}

/// Per-task file next to the trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreFile {
    pub task_id: String,
    pub mode: Mode,
    pub score: crate::suite::ScoreReport,
    pub counters: crate::policy::Counters,
    pub final_status: crate::policy::FinalStatus,
}

/// Outcome of one run: the tasks that were scored and their results.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub root: PathBuf,
    pub tasks: Vec<Task>,
    pub results: Vec<EpisodeResult>,
    pub metrics: RunMetrics,
}

fn make_env(run: &RunDir, task: &Task, dir_id: &str, config: &RunConfig) -> Result<Env, PolicyError> {
    let edge = config.edge_cases.get(&task.family).cloned().unwrap_or_default();
    let registry = build_registry(&task.family, config.seed, &edge)?;
    let workspace = run.make_workspace(dir_id)?;
    let mut library = if config.mode.uses_library() {
        SkillLibrary::load(run.task_dir(dir_id).join(CACHE_FILE))?
    } else {
        SkillLibrary::new()
    };
    library.set_nesting_limit(config.nesting_limit);
    Ok(Env { registry, workspace, library })
}

fn write_episode(run: &RunDir, dir_id: &str, task: &Task, result: &EpisodeResult) -> Result<(), HarnessError> {
    let dir = run.task_dir(dir_id);
    let mode = result.trace.mode;
    let trace_path = dir.join(format!("{mode}.trace.jsonl"));
    fs::write(&trace_path, result.trace.to_jsonl()).map_err(io_err(&trace_path))?;
    let score = ScoreFile {
        task_id: task.id.clone(),
        mode,
        score: result.score.clone(),
        counters: result.trace.counters,
        final_status: result.trace.final_status.clone(),
    };
    let score_path = dir.join(format!("{mode}.score.json"));
    let text = serde_json::to_string_pretty(&score).expect("score serializes") + "\n";
    fs::write(&score_path, text).map_err(io_err(&score_path))
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| HarnessError::Config(e.to_string()))
}

fn run_one(run: &RunDir, task: &Task, config: &RunConfig) -> Result<EpisodeResult, HarnessError> {
    let mut env = make_env(run, task, &task.id, config)?;
    let result = run_episode(task, config.mode, &mut env, config.episode)?;
    write_episode(run, &task.id, task, &result)?;
    Ok(result)
}

fn run_static_family(run: &RunDir, source: &[Task], target: &[Task], config: &RunConfig) -> Result<Vec<EpisodeResult>, HarnessError> {
    let source_cfg = RunConfig { mode: Mode::Skill, ..config.clone() };
    let (p1, p2) = run_static_phases(source, target, config.episode, |task, phase| {
        let (dir_id, cfg) = match phase {
            Phase::Source => (format!("{SOURCE_PHASE_DIR}/{}", task.id), &source_cfg),
            Phase::Target => (task.id.clone(), config),
        };
        make_env(run, task, &dir_id, cfg)
    })?;
    for (task, result) in source.iter().zip(&p1) {
        write_episode(run, &format!("{SOURCE_PHASE_DIR}/{}", task.id), task, result)?;
    }
    for (task, result) in target.iter().zip(&p2) {
        write_episode(run, &task.id, task, result)?;
    }
    Ok(p2)
}

/// Runs `tasks` under `config`, writing the per-task layout and
/// `metrics.json` under `out`. Static mode splits the tasks by difficulty
/// per family and reports only the target tasks.
pub fn run_suite(tasks: &[Task], out: &Path, config: &RunConfig) -> Result<RunOutput, HarnessError> {
    config.episode.limits.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
    let run = RunDir::new(out)?;
    let pool = pool(config.workers)?;

    let (scored, results): (Vec<Task>, Vec<EpisodeResult>) = if config.mode == Mode::Static {
        let (from, to) = config.transfer.split();
        let mut families: Vec<&str> = Vec::new();
        for t in tasks {
            if !families.contains(&t.family.as_str()) {
                families.push(&t.family);
            }
        }
        let groups: Vec<(Vec<Task>, Vec<Task>)> = families
            .iter()
            .map(|f| {
                let pick = |d: Difficulty| tasks.iter().filter(|t| t.family == *f && t.difficulty() == d).cloned().collect();
                (pick(from), pick(to))
            })
            .collect();
        let per_family: Vec<Result<Vec<EpisodeResult>, HarnessError>> =
            pool.install(|| groups.par_iter().map(|(s, t)| run_static_family(&run, s, t, config)).collect());
        let mut scored = Vec::new();
        let mut results = Vec::new();
        for ((_, targets), res) in groups.iter().zip(per_family) {
            scored.extend(targets.iter().cloned());
            results.extend(res?);
        }
        (scored, results)
    } else {
        let results: Vec<Result<EpisodeResult, HarnessError>> =
            pool.install(|| tasks.par_iter().map(|t| run_one(&run, t, config)).collect());
        (tasks.to_vec(), results.into_iter().collect::<Result<_, _>>()?)
    };

    let pairs: Vec<(&Task, &EpisodeResult)> = scored.iter().zip(&results).collect();
    let metrics = aggregate(config.mode, &pairs, &config.episode.token_model);
    let path = out.join(METRICS_FILE);
    fs::write(&path, serde_json::to_string_pretty(&metrics).expect("metrics serialize") + "\n").map_err(io_err(&path))?;
    Ok(RunOutput { root: out.to_path_buf(), tasks: scored, results, metrics })
}

pub fn read_metrics(run_dir: &Path) -> Result<RunMetrics, HarnessError> {
    let path = run_dir.join(METRICS_FILE);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse { what: "metrics file", path: path.display().to_string(), detail: e.to_string() })
}
