use serde::{Deserialize, Serialize};

use super::accounting::{count_tokens, LimitReason, TokenModel};
use crate::policy::{EpisodeResult, Mode};
use crate::suite::{Difficulty, Task};

/// Per-task measurements for one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskMetrics {
    pub task_id: String,
    pub difficulty: Difficulty,
    pub success: bool,
    pub score: f64,
    pub in_tokens: u64,
    pub out_tokens: u64,
    pub cost: f64,
    pub turns: u32,
    pub tool_calls: u32,
    pub exec_attempts: u32,
    pub exec_successes: u32,
    pub skills_saved: u32,
    pub skill_invocations: u32,
    pub claimed_done: bool,
    pub limit_exceeded: Option<LimitReason>,
}

impl TaskMetrics {
    pub fn tokens(&self) -> u64 {
        self.in_tokens + self.out_tokens
    }
}

/// Everything a comparison needs about one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub mode: Mode,
    pub tasks: Vec<TaskMetrics>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

impl RunMetrics {
    pub fn success_rate(&self) -> Option<f64> {
        ratio(self.tasks.iter().filter(|t| t.success).count() as f64, self.tasks.len() as f64)
    }

    pub fn success_rate_for(&self, difficulty: Difficulty) -> Option<f64> {
        let subset: Vec<&TaskMetrics> = self.tasks.iter().filter(|t| t.difficulty == difficulty).collect();
        ratio(subset.iter().filter(|t| t.success).count() as f64, subset.len() as f64)
    }

    /// Successful skill executions over attempts, nested executions included.
    pub fn exec_rate(&self) -> Option<f64> {
        let attempts: u32 = self.tasks.iter().map(|t| t.exec_attempts).sum();
        let successes: u32 = self.tasks.iter().map(|t| t.exec_successes).sum();
        ratio(successes as f64, attempts as f64)
    }

    /// Successful invocations per saved skill.
    pub fn reuse_rate(&self) -> Option<f64> {
        let saved: u32 = self.tasks.iter().map(|t| t.skills_saved).sum();
        let invoked: u32 = self.tasks.iter().map(|t| t.skill_invocations).sum();
        ratio(invoked as f64, saved as f64)
    }

    pub fn task(&self, id: &str) -> Option<&TaskMetrics> {
        self.tasks.iter().find(|t| t.task_id == id)
    }
}

/// Metrics for one finished episode. Token totals are recomputed from the
/// per-turn byte counts so every message is counted exactly once.
pub fn task_metrics(task: &Task, result: &EpisodeResult, model: &TokenModel) -> TaskMetrics {
    let trace = &result.trace;
    let in_tokens: u64 = trace.turns.iter().map(|t| count_tokens(t.bytes_in, model)).sum();
    let out_tokens: u64 = trace.turns.iter().map(|t| count_tokens(t.bytes_out, model)).sum();
    let executes = || trace.skill_events().filter(|e| e.op == "execute");
    let exec_attempts = executes().count() as u32;
    let exec_successes = executes().filter(|e| e.outcome == "success").count() as u32;
    TaskMetrics {
        task_id: task.id.clone(),
        difficulty: task.difficulty(),
        success: result.score.success,
        score: result.score.total,
        in_tokens,
        out_tokens,
        cost: model.cost(in_tokens, out_tokens),
        turns: trace.counters.turn_count,
        tool_calls: trace.counters.tool_call_count,
        exec_attempts,
        exec_successes,
        skills_saved: trace.skill_events().filter(|e| e.op == "save" && e.outcome == "ok").count() as u32,
        skill_invocations: exec_successes,
        claimed_done: trace.final_status.claimed_done,
        limit_exceeded: trace.final_status.limit_exceeded,
    }
}

pub fn aggregate(mode: Mode, results: &[(&Task, &EpisodeResult)], model: &TokenModel) -> RunMetrics {
    RunMetrics { mode, tasks: results.iter().map(|(task, result)| task_metrics(task, result, model)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(id: &str, success: bool, attempts: u32, successes: u32, saved: u32) -> TaskMetrics {
        TaskMetrics {
            task_id: id.into(),
            difficulty: Difficulty::Hard,
            success,
            score: if success { 100.0 } else { 0.0 },
            in_tokens: 10,
            out_tokens: 2,
            cost: 0.0,
            turns: 3,
            tool_calls: 3,
            exec_attempts: attempts,
            exec_successes: successes,
            skills_saved: saved,
            skill_invocations: successes,
            claimed_done: true,
            limit_exceeded: None,
        }
    }

    #[test]
    fn rates_and_guards() {
        let run = RunMetrics { mode: Mode::Skill, tasks: vec![tm("a", true, 10, 7, 1), tm("b", false, 0, 0, 0)] };
        assert!((run.exec_rate().unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(run.reuse_rate(), Some(7.0));
        assert_eq!(run.success_rate(), Some(0.5));
        assert_eq!(run.success_rate_for(Difficulty::Easy), None);
        let h1 = RunMetrics { mode: Mode::Skill, tasks: vec![tm("h", true, 5, 5, 1)] };
        assert_eq!(h1.reuse_rate(), Some(5.0));
        let none = RunMetrics { mode: Mode::Base, tasks: vec![tm("x", true, 0, 0, 0)] };
        assert_eq!(none.reuse_rate(), None);
        assert_eq!(none.exec_rate(), None);
    }
}
