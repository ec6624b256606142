//! The scaled benchmark: task generation, prompts, cross-task summaries and
//! rubric scoring.

mod prompt;
mod score;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fabric::{self, keyed_hash, splitmix64, FamilyDef, Registry, ToolError};
use crate::value::Record;

pub use prompt::{inject_cross_summary, render_prompt, CROSS_SUMMARY_HEADER};
pub use score::{score, score_bytes, CriterionKind, CriterionScore, Rubric, ScoreReport, NUMBER_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    E1,
    E2,
    E3,
    M1,
    M2,
    H1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Level {
    pub const ALL: [Level; 6] = [Level::E1, Level::E2, Level::E3, Level::M1, Level::M2, Level::H1];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::E1 => "e1",
            Level::E2 => "e2",
            Level::E3 => "e3",
            Level::M1 => "m1",
            Level::M2 => "m2",
            Level::H1 => "h1",
        }
    }

    pub fn difficulty(self) -> Difficulty {
        match self {
            Level::E1 | Level::E2 | Level::E3 => Difficulty::Easy,
            Level::M1 | Level::M2 => Difficulty::Medium,
            Level::H1 => Difficulty::Hard,
        }
    }

    /// (entity count N, per-entity tool calls M).
    pub fn scale(self) -> (usize, usize) {
        match self.difficulty() {
            Difficulty::Easy => (3, 3),
            Difficulty::Medium => (4, 4),
            Difficulty::Hard => (5, 5),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Level::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| SuiteError::UnknownLevel(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("unknown level '{0}'")]
    UnknownLevel(String),
    #[error("invalid task manifest: {0}")]
    Manifest(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One benchmark instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub id: String,
    pub family: String,
    pub level: Level,
    pub entities: Vec<String>,
    pub required_tools: Vec<String>,
    pub output_file: String,
}

impl Task {
    /// Builds a task for `family` at `level`, taking the first M data tools.
    pub fn new(family: &str, level: Level, entities: Vec<String>) -> Result<Task, SuiteError> {
        let def = fabric::family(family).ok_or_else(|| SuiteError::UnknownFamily(family.to_string()))?;
        let (_, m) = level.scale();
        Ok(Task {
            id: format!("{family}/{level}"),
            family: family.to_string(),
            level,
            entities,
            required_tools: def.tools[..m].iter().map(|t| t.name.to_string()).collect(),
            output_file: def.output_file.to_string(),
        })
    }

    pub fn family_def(&self) -> &'static FamilyDef {
        fabric::family(&self.family).expect("tasks are built from known families")
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn complexity(&self) -> usize {
        self.required_tools.len()
    }

    pub fn difficulty(&self) -> Difficulty {
        self.level.difficulty()
    }

    pub fn prompt(&self) -> String {
        render_prompt(self)
    }

    pub fn rubric(&self) -> Rubric {
        Rubric::standard()
    }

    /// Same task with a different id, for runs that need distinct workspaces.
    pub fn with_id(mut self, id: impl Into<String>) -> Task {
        self.id = id.into();
        self
    }
}

/// Expected output record for `task`.
pub fn oracle(registry: &Registry, task: &Task) -> Result<Record, ToolError> {
    registry.oracle_record(&task.entities, &task.required_tools)
}

fn family_rng(seed: u64, family: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(keyed_hash(seed, &[b"suite", family.as_bytes()])))
}

/// Six tasks per family: e1-e3 on disjoint entity triples, m1-m2 and h1 on
/// fresh seeded draws.
pub fn generate_suite(families: &[impl AsRef<str>], seed: u64) -> Result<Vec<Task>, SuiteError> {
    let mut tasks = Vec::with_capacity(families.len() * Level::ALL.len());
    for name in families {
        let name = name.as_ref();
        let def = fabric::family(name).ok_or_else(|| SuiteError::UnknownFamily(name.to_string()))?;
        let mut rng = family_rng(seed, name);
        let mut pool: Vec<&str> = def.pool.to_vec();
        pool.shuffle(&mut rng);
        for (i, level) in [Level::E1, Level::E2, Level::E3].into_iter().enumerate() {
            let picks = pool[i * 3..i * 3 + 3].iter().map(|s| s.to_string()).collect();
            tasks.push(Task::new(name, level, picks)?);
        }
        for level in [Level::M1, Level::M2, Level::H1] {
            let (n, _) = level.scale();
            let picks = def.pool.choose_multiple(&mut rng, n).map(|s| s.to_string()).collect();
            tasks.push(Task::new(name, level, picks)?);
        }
    }
    Ok(tasks)
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    tasks: Vec<Task>,
}

pub fn tasks_to_json(tasks: &[Task]) -> String {
    let manifest = Manifest { tasks: tasks.to_vec() };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    text
}

/// Parses a manifest and checks every task against the family catalog.
pub fn tasks_from_json(text: &str) -> Result<Vec<Task>, SuiteError> {
    let manifest: Manifest = serde_json::from_str(text).map_err(|e| SuiteError::Manifest(e.to_string()))?;
    for task in &manifest.tasks {
        let def = fabric::family(&task.family).ok_or_else(|| SuiteError::UnknownFamily(task.family.clone()))?;
        if let Some(tool) = task.required_tools.iter().find(|t| def.tool(t).is_none()) {
            return Err(SuiteError::Manifest(format!("task {}: '{tool}' is not a {} tool", task.id, task.family)));
        }
        if task.entities.is_empty() || task.required_tools.is_empty() {
            return Err(SuiteError::Manifest(format!("task {}: needs entities and required_tools", task.id)));
        }
    }
    Ok(manifest.tasks)
}

pub fn write_tasks(path: &Path, tasks: &[Task]) -> Result<(), SuiteError> {
    std::fs::write(path, tasks_to_json(tasks)).map_err(|source| SuiteError::Io { path: path.display().to_string(), source })
}

pub fn read_tasks(path: &Path) -> Result<Vec<Task>, SuiteError> {
    let text = std::fs::read_to_string(path).map_err(|source| SuiteError::Io { path: path.display().to_string(), source })?;
    tasks_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn full_suite_has_126_tasks() {
        let tasks = generate_suite(&fabric::family_names(), 42).unwrap();
        assert_eq!(tasks.len(), 126);
        let count = |d: Difficulty| tasks.iter().filter(|t| t.difficulty() == d).count();
        assert_eq!((count(Difficulty::Easy), count(Difficulty::Medium), count(Difficulty::Hard)), (63, 42, 21));
        let ids: HashSet<_> = tasks.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids.len(), 126);
        for task in &tasks {
            let (n, m) = task.level.scale();
            assert_eq!((task.entity_count(), task.complexity()), (n, m));
            let distinct: HashSet<_> = task.entities.iter().collect();
            assert_eq!(distinct.len(), n);
        }
    }

    #[test]
    fn one_family_gives_six_levels_with_distinct_easy_triples() {
        let tasks = generate_suite(&["cat-facts-collector"], 1).unwrap();
        let levels: Vec<&str> = tasks.iter().map(|t| t.level.as_str()).collect();
        assert_eq!(levels, vec!["e1", "e2", "e3", "m1", "m2", "h1"]);
        let easy: Vec<HashSet<&String>> = tasks[..3].iter().map(|t| t.entities.iter().collect()).collect();
        assert!(easy[0].is_disjoint(&easy[1]) && easy[1].is_disjoint(&easy[2]) && easy[0].is_disjoint(&easy[2]));
        assert_eq!(tasks[0].required_tools, vec!["breed_profile", "breed_relatives", "breed_coat_family"]);
        assert_eq!(tasks[0].output_file, "cat_encyclopedia.json");
    }

    #[test]
    fn generation_is_deterministic_and_validated() {
        let a = generate_suite(&fabric::family_names(), 9).unwrap();
        let b = generate_suite(&fabric::family_names(), 9).unwrap();
        assert_eq!(tasks_to_json(&a), tasks_to_json(&b));
        assert_ne!(tasks_to_json(&a), tasks_to_json(&generate_suite(&fabric::family_names(), 10).unwrap()));
        assert!(matches!(generate_suite(&["nope"], 1), Err(SuiteError::UnknownFamily(_))));
    }

    #[test]
    fn manifest_round_trips() {
        let tasks = generate_suite(&["gitlab-deep-analysis"], 3).unwrap();
        let text = tasks_to_json(&tasks);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = value["tasks"][0].as_object().unwrap();
        let keys: Vec<&str> = first.keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["id", "family", "level", "entities", "required_tools", "output_file"]);
        assert_eq!(tasks_from_json(&text).unwrap(), tasks);
        let bad = text.replace("get_commits", "get_nothing");
        assert!(matches!(tasks_from_json(&bad), Err(SuiteError::Manifest(_))));
    }
}
