use std::fs;

use skillcraft_core::fabric::family_names;
use skillcraft_core::harness::{compare, emit_report, read_metrics, run_suite, Metric, ReportFormat, RunConfig};
use skillcraft_core::policy::Mode;
use skillcraft_core::suite::{generate_suite, Difficulty, Level, Task};

const SEED: u64 = 7;

fn suite() -> Vec<Task> {
    generate_suite(&family_names(), SEED).unwrap()
}

#[test]
fn run_layout_and_metrics_file() {
    let tasks: Vec<Task> = suite().into_iter().filter(|t| t.family == "cat-facts-collector").collect();
    let dir = tempfile::tempdir().unwrap();
    let out = run_suite(&tasks, dir.path(), &RunConfig::new(Mode::Skill, SEED)).unwrap();
    assert_eq!(out.metrics.tasks.len(), 6);
    for task in &tasks {
        let td = dir.path().join(&task.id);
        assert!(td.join("workspace").is_dir());
        assert!(td.join("skill.trace.jsonl").is_file());
        assert!(td.join("skill.score.json").is_file());
        assert!(td.join("skill_cache.json").is_file());
        assert!(td.join("workspace").join(&task.output_file).is_file());
    }
    assert_eq!(read_metrics(dir.path()).unwrap(), out.metrics);
}

#[test]
fn skill_mode_beats_baseline_on_every_clean_task() {
    let tasks = suite();
    let base_dir = tempfile::tempdir().unwrap();
    let skill_dir = tempfile::tempdir().unwrap();
    let base = run_suite(&tasks, base_dir.path(), &RunConfig::new(Mode::Base, SEED)).unwrap().metrics;
    let skill = run_suite(&tasks, skill_dir.path(), &RunConfig::new(Mode::Skill, SEED)).unwrap().metrics;
    for task in &tasks {
        let b = base.task(&task.id).unwrap();
        let s = skill.task(&task.id).unwrap();
        assert!(b.success && s.success, "{}", task.id);
        assert!(s.tokens() < b.tokens(), "{}: tokens {} vs {}", task.id, s.tokens(), b.tokens());
        assert!(s.tool_calls < b.tool_calls, "{}: calls {} vs {}", task.id, s.tool_calls, b.tool_calls);
        if task.level == Level::H1 {
            assert!((s.tool_calls as f64 - b.tool_calls as f64) / (b.tool_calls as f64) <= -0.5);
        }
    }
    let table = compare(&base, &skill);
    assert_eq!(table.intersection.len(), 126);
    assert!(table.row(Metric::Tokens).diff.unwrap() < 0.0);
    assert_eq!(skill.exec_rate(), Some(1.0));
    let report = emit_report(&[table], ReportFormat::Markdown);
    assert_eq!(report.lines().count(), 3);
}

#[test]
fn static_run_reports_only_target_tasks() {
    let tasks: Vec<Task> = suite().into_iter().filter(|t| t.family == "gitlab-deep-analysis" || t.family == "cat-facts-collector").collect();
    let dir = tempfile::tempdir().unwrap();
    let out = run_suite(&tasks, dir.path(), &RunConfig::new(Mode::Static, SEED)).unwrap();
    assert_eq!(out.metrics.tasks.len(), 2);
    assert!(out.metrics.tasks.iter().all(|t| t.difficulty == Difficulty::Hard && t.success && t.skills_saved == 0));
    assert_eq!(out.metrics.exec_rate(), Some(1.0));
    assert!(dir.path().join("phase1").join("cat-facts-collector").join("e1").join("skill.trace.jsonl").is_file());
}

#[test]
fn identical_seeds_give_identical_files() {
    let tasks: Vec<Task> = suite().into_iter().filter(|t| t.family == "pokeapi-pokedex").collect();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new(Mode::Skill, SEED);
    run_suite(&tasks, a.path(), &cfg).unwrap();
    cfg.workers = 1;
    run_suite(&tasks, b.path(), &cfg).unwrap();
    for task in &tasks {
        for f in ["skill.trace.jsonl", "skill.score.json", "skill_cache.json"] {
            assert_eq!(fs::read(a.path().join(&task.id).join(f)).unwrap(), fs::read(b.path().join(&task.id).join(f)).unwrap());
        }
    }
    assert_eq!(fs::read(a.path().join("metrics.json")).unwrap(), fs::read(b.path().join("metrics.json")).unwrap());
}
