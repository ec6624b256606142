use serde::{Deserialize, Serialize};

use super::Task;
use crate::fabric::Workspace;
use crate::value::{Record, Value};

pub const NUMBER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    FileExists,
    JsonValid,
    Completeness,
    FieldAccuracy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rubric {
    pub criteria: Vec<(CriterionKind, f64)>,
    pub success_threshold: f64,
}

impl Rubric {
    pub fn standard() -> Rubric {
        Rubric {
            criteria: vec![
                (CriterionKind::FileExists, 10.0),
                (CriterionKind::JsonValid, 10.0),
                (CriterionKind::Completeness, 30.0),
                (CriterionKind::FieldAccuracy, 50.0),
            ],
            success_threshold: 0.9,
        }
    }

    fn weight(&self, kind: CriterionKind) -> f64 {
        self.criteria.iter().find(|(k, _)| *k == kind).map(|(_, w)| *w).unwrap_or(0.0)
    }

    fn max_total(&self) -> f64 {
        self.criteria.iter().map(|(_, w)| w).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionScore {
    pub kind: CriterionKind,
    pub earned: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub per_criterion: Vec<CriterionScore>,
    pub total: f64,
    pub success: bool,
}

impl ScoreReport {
    pub fn earned(&self, kind: CriterionKind) -> f64 {
        self.per_criterion.iter().find(|c| c.kind == kind).map(|c| c.earned).unwrap_or(0.0)
    }
}

fn leaves<'v>(value: &'v Value, path: String, out: &mut Vec<(String, &'v Value)>) {
    match value {
        Value::Record(map) if !map.is_empty() => {
            for (k, v) in map {
                leaves(v, format!("{path}/{k}"), out);
            }
        }
        Value::List(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                leaves(v, format!("{path}/{i}"), out);
            }
        }
        leaf => out.push((path, leaf)),
    }
}

fn lookup<'v>(value: &'v Value, path: &str) -> Option<&'v Value> {
    let mut cur = value;
    for part in path.split('/').skip(1) {
        cur = match cur {
            Value::Record(map) => map.get(part)?,
            Value::List(items) => items.get(part.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(cur)
}

fn leaf_matches(expected: &Value, got: &Value) -> bool {
    match (expected, got) {
        (Value::Number(a), Value::Number(b)) => (a - b).abs() <= NUMBER_TOLERANCE,
        _ => expected == got,
    }
}

/// Scores the task's output file against the oracle record. Absence scores
/// zero; nothing here fails.
pub fn score(task: &Task, workspace: &Workspace, oracle: &Record) -> ScoreReport {
    let bytes = workspace.file_bytes(&task.output_file);
    score_bytes(task, bytes.as_deref(), oracle)
}

pub fn score_bytes(task: &Task, bytes: Option<&[u8]>, oracle: &Record) -> ScoreReport {
    let rubric = task.rubric();
    let parsed = bytes.and_then(|b| std::str::from_utf8(b).ok()).and_then(|t| Value::from_json_str(t).ok());
    let file_exists = bytes.is_some();
    let output = parsed.as_ref().and_then(Value::as_record);

    let n = task.entities.len();
    let present = output
        .map(|out| task.entities.iter().filter(|e| matches!(out.get(e.as_str()), Some(Value::Record(_)))).count())
        .unwrap_or(0);
    let completeness = if n == 0 { 1.0 } else { present as f64 / n as f64 };

    let oracle_value = Value::Record(oracle.clone());
    let mut expected = Vec::new();
    leaves(&oracle_value, String::new(), &mut expected);
    let accuracy = if expected.is_empty() {
        if parsed.is_some() { 1.0 } else { 0.0 }
    } else {
        let hits = match &parsed {
            Some(out) => expected
                .iter()
                .filter(|(path, want)| lookup(out, path).is_some_and(|got| leaf_matches(want, got)))
                .count(),
            None => 0,
        };
        hits as f64 / expected.len() as f64
    };

    let parts = [
        (CriterionKind::FileExists, if file_exists { 1.0 } else { 0.0 }),
        (CriterionKind::JsonValid, if parsed.is_some() { 1.0 } else { 0.0 }),
        (CriterionKind::Completeness, if parsed.is_some() { completeness } else { 0.0 }),
        (CriterionKind::FieldAccuracy, accuracy),
    ];
    let per_criterion: Vec<CriterionScore> = parts
        .iter()
        .map(|(kind, frac)| {
            let max = rubric.weight(*kind);
            CriterionScore { kind: *kind, earned: max * frac, max }
        })
        .collect();
    let total: f64 = per_criterion.iter().map(|c| c.earned).sum();
    let success = total >= rubric.success_threshold * rubric.max_total() - 1e-9;
    ScoreReport { per_criterion, total, success }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fabric::build_registry;
    use crate::suite::{oracle, Level};

    fn h1() -> (Task, Record) {
        let task = Task::new(
            "gitlab-deep-analysis",
            Level::H1,
            ["gitlab-runner", "gitaly", "gitlab-pages", "gitlab-shell", "cli"].map(String::from).to_vec(),
        )
        .unwrap();
        let reg = build_registry(&task.family, 11, &Default::default()).unwrap();
        let expected = oracle(&reg, &task).unwrap();
        (task, expected)
    }

    #[test]
    fn perfect_output_scores_100() {
        let (task, expected) = h1();
        let text = Value::Record(expected.clone()).to_json();
        let report = score_bytes(&task, Some(text.as_bytes()), &expected);
        assert_eq!(report.total, 100.0);
        assert!(report.success);
    }

    #[test]
    fn missing_file_scores_zero() {
        let (task, expected) = h1();
        let report = score_bytes(&task, None, &expected);
        assert_eq!(report.total, 0.0);
        assert!(!report.success);
        assert!(report.per_criterion.iter().all(|c| c.earned == 0.0));
    }

    #[test]
    fn dropping_one_of_five_entities_scores_84() {
        let (task, expected) = h1();
        let mut partial = expected.clone();
        partial.shift_remove("cli");
        let text = Value::Record(partial).to_json();
        let report = score_bytes(&task, Some(text.as_bytes()), &expected);
        // 10 + 10 + 30*4/5 + 50*4/5, each entity holding the same number of leaves
        assert!((report.total - 84.0).abs() < 1e-9, "{}", report.total);
        assert!(!report.success);
    }

    #[test]
    fn invalid_json_keeps_only_file_points() {
        let (task, expected) = h1();
        let report = score_bytes(&task, Some(b"{not json"), &expected);
        assert_eq!(report.total, 10.0);
    }

    #[test]
    fn numbers_match_within_tolerance_and_strings_exactly() {
        let task = Task::new("cocktail-menu-generator", Level::E1, vec!["Mojito".into()]).unwrap();
        let expected: Record = [("Mojito".to_string(), Value::record([("x", Value::Number(1.5)), ("y", Value::from("a"))]))].into_iter().collect();
        let close = br#"{"Mojito": {"x": 1.5000000000001, "y": "a"}}"#;
        assert_eq!(score_bytes(&task, Some(close), &expected).total, 100.0);
        let wrong = br#"{"Mojito": {"x": 1.5, "y": "A"}}"#;
        assert_eq!(score_bytes(&task, Some(wrong), &expected).earned(CriterionKind::FieldAccuracy), 25.0);
    }
}
