use super::*;
use crate::script::{NoTools, RuntimeIssueKind};

fn params(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn args(pairs: &[(&str, Value)]) -> Record {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

const COCKTAIL: &str = "s = call_tool(\"search\", name=name)\nresult = {search: {category: s.category}}\n";

fn cocktail_tools(tool: &str, a: Record) -> Result<Value, DispatchError> {
    assert_eq!(tool, "search");
    let name = a["name"].as_str().unwrap().to_string();
    Ok(Value::record([("category", Value::from(format!("{name} family")))]))
}

#[test]
fn save_acknowledges_and_versions() {
    let mut lib = SkillLibrary::new();
    let ack = lib.save_skill("process_cocktail_complete", COCKTAIL, &params(&["name"]), "Cocktail pipeline").unwrap();
    assert_eq!(ack, "Skill 'process_cocktail_complete' saved successfully.");
    assert_eq!(lib.get_skill("process_cocktail_complete").unwrap().version, 1);
    lib.save_skill("process_cocktail_complete", COCKTAIL, &params(&["name"]), "v2").unwrap();
    let view = lib.get_skill("process_cocktail_complete").unwrap();
    assert_eq!(view.version, 2);
    assert_eq!(view.script_code, COCKTAIL);
    assert_eq!(view.parameters, vec!["name"]);
    assert!(matches!(lib.get_skill("nope"), Err(LibraryError::UnknownSkill(_))));
}

#[test]
fn save_rejects_syntax_errors_with_line() {
    let mut lib = SkillLibrary::new();
    let script = "a = 1\nb = 2\nc = 3\nd = 4\ne = 5\nf = 6\ng = 7\n}\nresult = a\n";
    let err = lib.save_skill("process_cocktail", script, &[], "broken").unwrap_err();
    let LibraryError::Verifier(report) = &err else { panic!("{err}") };
    assert_eq!(report.stage, VerifierStage::Syntax);
    let VerifierDetail::Syntax(issue) = &report.detail else { panic!() };
    assert_eq!(issue.line, 8);
    assert!(err.to_string().starts_with("Skill save failed"));
    assert!(lib.is_empty());
}

#[test]
fn save_checks_parameters() {
    let mut lib = SkillLibrary::new();
    let err = lib.save_skill("s", "result = a + b", &params(&["a"]), "").unwrap_err();
    assert!(matches!(err, LibraryError::ParameterMismatch { ref missing } if missing == &vec!["b".to_string()]));
    assert!(matches!(lib.save_skill("s", "result = a", &params(&["a", "a"]), ""), Err(LibraryError::DuplicateParameter(_))));
    assert!(matches!(lib.save_skill("bad name", "result = 1", &[], ""), Err(LibraryError::InvalidName(_))));
    assert!(matches!(lib.save_skill("s", "  \n", &[], ""), Err(LibraryError::EmptyScript)));
    // extra parameters beyond the free variables are allowed
    lib.save_skill("s", "result = a", &params(&["a", "unused"]), "").unwrap();
}

#[test]
fn execute_success_updates_stats() {
    let mut lib = SkillLibrary::new();
    lib.save_skill("c", COCKTAIL, &params(&["name"]), "").unwrap();
    let mut tools = cocktail_tools;
    let out = lib.execute_skill("c", &args(&[("name", "Margarita".into())]), &mut tools, 0).unwrap();
    assert!(out.is_success());
    assert_eq!(out.depth_used, 1);
    assert_eq!(out.result.to_json(), r#"{"search":{"category":"Margarita family"}}"#);
    assert_eq!(out.to_value().get("status"), Some(&Value::from("success")));
    assert_eq!(lib.entry("c").unwrap().execution_stats, ExecutionStats { success_count: 1, failure_count: 0 });
    assert_eq!(lib.take_execution_log(), vec![ExecutionEvent { skill: "c".into(), level: 1, success: true }]);
    assert!(matches!(lib.execute_skill("zzz", &Record::new(), &mut tools, 0), Err(LibraryError::UnknownSkill(_))));
}

#[test]
fn runtime_failure_echoes_inputs_and_trace() {
    let mut lib = SkillLibrary::new();
    lib.save_skill("w", "x = {weight: null}\nresult = x.weight + n\n", &params(&["n"]), "").unwrap();
    let input = args(&[("n", Value::from(1i64))]);
    let out = lib.execute_skill("w", &input, &mut NoTools, 0).unwrap();
    assert_eq!(out.status, ExecutionStatus::Failed);
    let issue = out.report.as_ref().unwrap().runtime_issue().unwrap();
    assert_eq!(issue.kind, RuntimeIssueKind::TypeError);
    assert_eq!(issue.inputs, input);
    assert_eq!(issue.trace.len(), 1);
    assert_eq!(issue.trace[0].line, 2);
    assert_eq!(issue.trace[0].skill.as_deref(), Some("w"));
    assert_eq!(out.result.get("error_type"), Some(&Value::from("type_error")));
    assert_eq!(out.result.get("inputs").unwrap().get("n"), Some(&Value::Number(1.0)));
    assert_eq!(lib.entry("w").unwrap().execution_stats.failure_count, 1);
}

#[test]
fn quality_failure_is_reported() {
    let mut lib = SkillLibrary::new();
    let script = "result = {f1: null, f2: \"Unknown\", f3: 0, f4: \"x\", f5: 2}";
    lib.save_skill("q", script, &[], "").unwrap();
    let out = lib.execute_skill("q", &Record::new(), &mut NoTools, 0).unwrap();
    assert_eq!(out.status, ExecutionStatus::Failed);
    let report = out.report.unwrap();
    assert_eq!(report.stage, VerifierStage::Quality);
    let VerifierDetail::Quality(finding) = report.detail else { panic!() };
    assert!((finding.ratio - 0.6).abs() < 1e-12);
}

#[test]
fn argument_binding_is_checked() {
    let mut lib = SkillLibrary::new();
    lib.save_skill("p", "result = {v: a}", &params(&["a"]), "").unwrap();
    let missing = lib.execute_skill("p", &Record::new(), &mut NoTools, 0).unwrap();
    assert_eq!(missing.report.unwrap().runtime_issue().unwrap().kind, RuntimeIssueKind::ArityError);
    let extra = lib.execute_skill("p", &args(&[("a", 1i64.into()), ("b", 2i64.into())]), &mut NoTools, 0).unwrap();
    assert!(!extra.is_success());
    assert_eq!(lib.entry("p").unwrap().execution_stats.failure_count, 2);
}

#[test]
fn stored_scripts_that_no_longer_parse_fail_at_execution() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skill_cache.json");
    std::fs::write(
        &path,
        r#"{"skills": {"d": {"script_code": "x = 1\nreturn x\n", "parameters": [], "description": "", "version": 1, "execution_stats": {"success_count": 0, "failure_count": 0}}}}"#,
    )
    .unwrap();
    let mut lib = SkillLibrary::load(&path).unwrap();
    let out = lib.execute_skill("d", &Record::new(), &mut NoTools, 0).unwrap();
    assert!(!out.is_success());
    assert_eq!(out.result.get("line"), Some(&Value::from(2i64)));
    assert_eq!(out.report.unwrap().stage, VerifierStage::Syntax);
}

#[test]
fn flat_mode_forbids_skill_calls_in_scripts() {
    let mut lib = SkillLibrary::new();
    lib.save_skill("inner", "result = {a: 1}", &[], "").unwrap();
    lib.save_skill("outer", "r = call_tool(\"execute_skill\", skill_name=\"inner\")\nresult = r", &[], "").unwrap();
    let out = lib.execute_skill("outer", &Record::new(), &mut NoTools, 0).unwrap();
    assert_eq!(out.report.unwrap().runtime_issue().unwrap().kind, RuntimeIssueKind::ToolFailure);
}

fn tower(lib: &mut SkillLibrary) {
    lib.save_skill("low", "result = {v: x}", &params(&["x"]), "").unwrap();
    lib.save_skill(
        "medium",
        "r = call_tool(\"execute_skill\", skill_name=\"low\", args={x: x})\nresult = {score: r.v + 1}",
        &params(&["x"]),
        "",
    )
    .unwrap();
    lib.save_skill(
        "high",
        "out = {}\nfor x in xs {\n    out[str(x)] = call_tool(\"execute_skill\", skill_name=\"medium\", args={x: x})\n}\nresult = out",
        &params(&["xs"]),
        "",
    )
    .unwrap();
}

#[test]
fn hierarchical_depth_and_propagation() {
    let mut lib = SkillLibrary::new();
    lib.set_hierarchical(true);
    tower(&mut lib);
    let xs = Value::List(vec![1i64.into(), 2i64.into()]);
    let out = lib.execute_skill("high", &args(&[("xs", xs)]), &mut NoTools, 0).unwrap();
    assert!(out.is_success(), "{:?}", out.result);
    assert_eq!(out.depth_used, 3);
    assert_eq!(out.result.to_json(), r#"{"1":{"score":2},"2":{"score":3}}"#);
    let log = lib.take_execution_log();
    assert_eq!(log.len(), 5);
    assert_eq!(log.iter().filter(|e| e.level == 3).count(), 2);

    let bad = Value::List(vec![1i64.into(), Value::Null]);
    let out = lib.execute_skill("high", &args(&[("xs", bad)]), &mut NoTools, 0).unwrap();
    let issue = out.report.unwrap().runtime_issue().cloned().unwrap();
    assert_eq!(issue.kind, RuntimeIssueKind::TypeError);
    let frames: Vec<(usize, Option<&str>)> = issue.trace.iter().map(|f| (f.line, f.skill.as_deref())).collect();
    assert_eq!(frames, vec![(2, Some("high")), (3, Some("high")), (2, Some("medium"))]);
}

#[test]
fn nesting_limit_is_enforced() {
    let mut lib = SkillLibrary::new();
    lib.set_hierarchical(true);
    lib.set_nesting_limit(2);
    tower(&mut lib);
    let out = lib.execute_skill("high", &args(&[("xs", Value::List(vec![1i64.into()]))]), &mut NoTools, 0).unwrap();
    assert!(!out.is_success());
    assert!(out.depth_used <= 2);
    assert_eq!(out.report.unwrap().runtime_issue().unwrap().kind, RuntimeIssueKind::DepthExceeded);

    lib.set_nesting_limit(10);
    let top = lib.execute_skill("low", &args(&[("x", 1i64.into())]), &mut NoTools, 10).unwrap();
    assert_eq!(top.report.unwrap().runtime_issue().unwrap().kind, RuntimeIssueKind::DepthExceeded);
}

#[test]
fn locked_library_rejects_saves_and_keeps_entries() {
    let mut lib = SkillLibrary::new();
    lib.save_skill("c", COCKTAIL, &params(&["name"]), "d").unwrap();
    lib.lock();
    let before = lib.cache_text();
    assert!(matches!(lib.save_skill("x", "result = 1", &[], ""), Err(LibraryError::Locked(_))));
    let mut tools = cocktail_tools;
    let out = lib.execute_skill("c", &args(&[("name", "Mojito".into())]), &mut tools, 0).unwrap();
    assert!(out.is_success());
    assert_eq!(lib.cache_text(), before);
    assert_eq!(lib.take_execution_log().len(), 1);
}

#[test]
fn listing_format() {
    let mut lib = SkillLibrary::new();
    assert_eq!(lib.list_skills(), "");
    lib.save_skill("process_cocktail_complete", COCKTAIL, &params(&["name"]), "Cocktail pipeline").unwrap();
    assert_eq!(lib.list_skills(), "Skill 1: process_cocktail_complete -- Cocktail pipeline");
    lib.save_skill("b", "result = 1", &[], "second").unwrap();
    lib.save_skill("a", "result = 2", &[], "third").unwrap();
    let lines: Vec<String> = lib.list_skills().lines().map(str::to_string).collect();
    assert_eq!(lines, vec![
        "Skill 1: process_cocktail_complete -- Cocktail pipeline",
        "Skill 2: b -- second",
        "Skill 3: a -- third",
    ]);
}

#[test]
fn cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skill_cache.json");
    let mut lib = SkillLibrary::new();
    lib.persist_to(&path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), r#"{"skills": {}}"#);
    lib.save_skill("zeta", COCKTAIL, &params(&["name"]), "quote \" and é").unwrap();
    lib.save_skill("alpha", "result = 1", &[], "").unwrap();
    let mut tools = cocktail_tools;
    lib.execute_skill("zeta", &args(&[("name", "Negroni".into())]), &mut tools, 0).unwrap();
    lib.persist().unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(r#"{"skills": {"zeta": {"script_code": "#));
    let loaded = SkillLibrary::load(&path).unwrap();
    let a: Vec<_> = lib.entries().cloned().collect();
    let b: Vec<_> = loaded.entries().cloned().collect();
    assert_eq!(a, b);
    assert_eq!(loaded.cache_text(), text);

    let copy = dir.path().join("other").join("skill_cache.json");
    std::fs::create_dir_all(copy.parent().unwrap()).unwrap();
    std::fs::copy(&path, &copy).unwrap();
    let copied: Vec<_> = SkillLibrary::load(&copy).unwrap().entries().cloned().collect();
    assert_eq!(copied, a);
}

#[test]
fn malformed_cache_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skill_cache.json");
    std::fs::write(&path, r#"{"skills": {"a": {"script_code": "result = 1", "parameters": [], "description": "", "version": 0, "execution_stats": {"success_count": 0, "failure_count": 0}}}}"#).unwrap();
    let err = SkillLibrary::load(&path).unwrap_err();
    assert!(matches!(&err, LibraryError::Cache { field, .. } if field == "skills.a.version"), "{err}");
    assert!(err.to_string().contains("skill_cache.json"));
    std::fs::write(&path, "not json").unwrap();
    assert!(matches!(SkillLibrary::load(&path), Err(LibraryError::Cache { .. })));
    assert!(SkillLibrary::load(dir.path().join("absent.json")).unwrap().is_empty());
}

#[test]
fn transient_scripts_never_touch_a_library() {
    let out = execute_transient("result = {a: 1}", &mut NoTools, 100);
    assert!(out.is_success());
    assert!(!execute_transient("return 1", &mut NoTools, 100).is_success());
}
