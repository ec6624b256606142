//! The bounded skill-script language.
//!
//! Scripts are sequences of assignments, `for x in <collection> { ... }`
//! loops, `if/else` blocks, and expression statements. There are no
//! user-defined functions and no unbounded loops; tools are reached through
//! `call_tool("name", key=value, ...)` and the script's output is the final
//! value of `result`.

mod analysis;
mod ast;
mod builtins;
mod error;
mod eval;
mod lexer;
mod parser;
mod render;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use analysis::free_variables;
pub use ast::{
    is_identifier, Accessor, BinaryOp, Builtin, Expr, Script, Stmt, StmtKind, Target, UnaryOp, CALL_TOOL,
};
pub use error::{RuntimeIssue, RuntimeIssueKind, SyntaxIssue, TraceFrame};
pub use eval::{evaluate, DispatchError, NoTools, ToolDispatcher, DEFAULT_STEP_BUDGET, RESULT_VAR};
pub use parser::parse;
pub use render::{render_canonical, render_expr, statement_summary};

/// Raw script text. Never empty after whitespace stripping.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ScriptSource(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("script source is empty")]
pub struct EmptySource;

impl ScriptSource {
    pub fn new(text: impl Into<String>) -> Result<Self, EmptySource> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(EmptySource);
        }
        Ok(ScriptSource(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn parse(&self) -> Result<Script, SyntaxIssue> {
        parse(&self.0)
    }
}

impl TryFrom<String> for ScriptSource {
    type Error = EmptySource;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        ScriptSource::new(text)
    }
}

impl From<ScriptSource> for String {
    fn from(source: ScriptSource) -> String {
        source.0
    }
}

impl fmt::Display for ScriptSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Script {
    /// Canonical source for this tree.
    pub fn to_source(&self) -> ScriptSource {
        ScriptSource(render_canonical(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{Record, Value};

    fn run(src: &str, bindings: &[(&str, Value)]) -> Result<Value, RuntimeIssue> {
        let script = parse(src).expect("parses");
        let bindings: Record = bindings.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        evaluate(&script, &bindings, &mut NoTools, DEFAULT_STEP_BUDGET)
    }

    #[test]
    fn minimal_script_is_one_assignment() {
        let script = parse("result = 1").unwrap();
        assert_eq!(script.statements.len(), 1);
        assert!(matches!(script.statements[0].kind, StmtKind::Assign { .. }));
    }

    #[test]
    fn stray_brace_reports_its_line() {
        let src = "a = 1\nb = 2\nc = 3\nd = 4\ne = 5\nf = 6\ng = 7\n}\nresult = a\n";
        let issue = parse(src).unwrap_err();
        assert_eq!(issue.line, 8);
        assert!(issue.message.contains("unexpected token '}'"), "{}", issue.message);
        assert!(issue.context_snippet.contains("   8 | }"));
        assert!(issue.context_snippet.contains("   7 | g = 7"));
        assert!(issue.context_snippet.contains("   9 | result = a"));
    }

    #[test]
    fn return_is_an_invalid_keyword() {
        let issue = parse("x = 1\nreturn x\n").unwrap_err();
        assert_eq!(issue.line, 2);
        assert!(issue.message.contains("invalid keyword 'return'"));
    }

    #[test]
    fn other_foreign_constructs_are_rejected() {
        for src in ["while true {\n}\n", "def f {\n}\n", "import json\n", "x = foo(1)\n", "x = 'a'\n"] {
            assert!(parse(src).is_err(), "{src:?} should not parse");
        }
    }

    #[test]
    fn unmatched_braces_report_their_own_line() {
        let src = "x = 1\nfor x in [1] {\n  y = x\n  z = y\n";
        let issue = parse(src).unwrap_err();
        assert_eq!(issue.line, 2);
        assert!(issue.message.contains("unmatched '{'"));
        let stray = parse("x = 1\ny = 2\n}\n").unwrap_err();
        assert_eq!(stray.line, 3);
    }

    #[test]
    fn free_variables_examples() {
        let names = |src: &str| -> Vec<String> { free_variables(&parse(src).unwrap()).into_iter().collect() };
        assert_eq!(names("result = breed"), vec!["breed"]);
        assert!(names("x = 1\nresult = x").is_empty());
        assert_eq!(names("for b in breeds {\n  n = b\n}\nresult = n"), vec!["breeds", "n"]);
        assert_eq!(names("if c {\n x = 1\n} else {\n x = 2\n}\nresult = x"), vec!["c"]);
        assert_eq!(names("if c {\n x = 1\n}\nresult = x"), vec!["c", "x"]);
        assert_eq!(names("rec.a = 1\nresult = rec"), vec!["rec"]);
        assert_eq!(names("result = call_tool(\"t\", q=len(name))"), vec!["name"]);
    }

    #[test]
    fn evaluates_arithmetic() {
        let v = run("result = a + b", &[("a", Value::from(1i64)), ("b", Value::from(2i64))]).unwrap();
        assert_eq!(v, Value::Number(3.0));
    }

    #[test]
    fn null_arithmetic_is_a_type_error_on_its_line() {
        let src = "x = {weight: null}\ny = 2\nresult = x.weight + 1\n";
        let issue = run(src, &[]).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::TypeError);
        assert_eq!(issue.line(), Some(3));
        assert!(issue.message.contains("null"));
    }

    #[test]
    fn unbound_and_missing_result_are_unknown_name() {
        let issue = run("result = r", &[]).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::UnknownName);
        let issue = run("x = 1\ny = 2", &[]).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::UnknownName);
        assert_eq!(issue.line(), Some(2));
    }

    #[test]
    fn budget_is_enforced() {
        let src = "n = 0\nfor i in [1,2,3,4,5,6,7,8,9,10] {\n n = n + i\n}\nresult = n";
        assert_eq!(run(src, &[]).unwrap(), Value::Number(55.0));
        let script = parse(src).unwrap();
        let issue = evaluate(&script, &Record::new(), &mut NoTools, 20).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::BudgetExceeded);
    }

    #[test]
    fn runtime_issue_echoes_inputs() {
        let issue = run("result = a / 0", &[("a", Value::from(4i64))]).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::TypeError);
        assert_eq!(issue.inputs.get("a"), Some(&Value::Number(4.0)));
    }

    #[test]
    fn canonical_rendering_normalizes() {
        let script = parse("result=1").unwrap();
        assert_eq!(render_canonical(&script), "result = 1\n");
        let script = parse("result = {z: 1, a: [1,2], \"b c\": {y: null}}").unwrap();
        assert_eq!(render_canonical(&script), "result = {z: 1, a: [1, 2], \"b c\": {y: null}}\n");
    }

    #[test]
    fn rendering_keeps_precedence() {
        for src in [
            "result = (a + b) * c\n",
            "result = a - (b - c)\n",
            "result = not (a or b)\n",
            "result = (not a) == b\n",
            "result = -(a + 1)\n",
            "result = (a + b).x[0]\n",
            "if a {\n    x = 1\n} else if b {\n    x = 2\n} else {\n    x = 3\n}\n",
        ] {
            let script = parse(src).unwrap();
            let rendered = render_canonical(&script);
            assert_eq!(rendered, src);
            assert_eq!(parse(&rendered).unwrap(), script);
        }
    }

    #[test]
    fn builtins_behave() {
        let cases: &[(&str, Value)] = &[
            ("result = len(\"héllo\")", Value::from(5i64)),
            ("result = str(2.5) + str(3)", Value::from("2.53")),
            ("result = num(\" 42 \")", Value::from(42i64)),
            ("result = upper(lower(\"AbC\"))", Value::from("ABC")),
            ("result = contains([1, 2], 2)", Value::Bool(true)),
            ("result = join(split(\"a,b\", \",\"), \"-\")", Value::from("a-b")),
            ("result = keys({b: 1, a: 2})", Value::List(vec!["b".into(), "a".into()])),
            ("result = get({a: 1}, \"b\", 7)", Value::from(7i64)),
            ("result = get(null, \"b\", 7)", Value::from(7i64)),
            ("result = append([1], 2)", Value::List(vec![1i64.into(), 2i64.into()])),
            ("result = slice([1, 2, 3, 4], 1, -1)", Value::List(vec![2i64.into(), 3i64.into()])),
            ("result = slice(\"abcdef\", 4)", Value::from("ef")),
            ("result = round(2.345, 2)", Value::Number(2.35)),
            ("result = round(-2.5)", Value::Number(-3.0)),
            ("result = json_decode(json_encode({a: [1, null]})).a[1]", Value::Null),
            ("result = regex_match(\"(\\\\d+)-(\\\\d+)\", \"12-17 years\")", Value::List(vec!["12".into(), "17".into()])),
            ("result = regex_match(\"x+\", \"abc\")", Value::Null),
            ("result = -7 % 3", Value::from(2i64)),
        ];
        for (src, want) in cases {
            assert_eq!(&run(src, &[]).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn arity_errors_are_runtime_issues() {
        let issue = run("result = len(1, 2)", &[]).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::ArityError);
    }

    #[test]
    fn path_assignment_updates_in_place() {
        let src = "r = {a: {b: 1}, l: [1, 2]}\nr.a.b = 5\nr[\"c\"] = 6\nr.l[-1] = 9\nresult = r";
        assert_eq!(run(src, &[]).unwrap().to_json(), r#"{"a":{"b":5},"l":[1,9],"c":6}"#);
    }

    #[test]
    fn call_tool_errors_map_to_kinds() {
        let script = parse("x = call_tool(\"nope\", a=1)\nresult = x").unwrap();
        let issue = evaluate(&script, &Record::new(), &mut NoTools, 100).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::UnknownTool);

        let mut failing = |_: &str, _: Record| -> Result<Value, DispatchError> {
            Err(DispatchError::Failed("boom".into()))
        };
        let issue = evaluate(&script, &Record::new(), &mut failing, 100).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::ToolFailure);
        assert_eq!(issue.line(), Some(1));
    }

    #[test]
    fn call_tool_returns_direct_result() {
        let script = parse("p = call_tool(\"profile\", name=n)\nresult = p.origin").unwrap();
        let mut tools = |tool: &str, args: Record| -> Result<Value, DispatchError> {
            assert_eq!(tool, "profile");
            Ok(Value::record([("origin", Value::from(format!("from {}", args["name"].as_str().unwrap())))]))
        };
        let bindings: Record = [("n".to_string(), Value::from("Persian"))].into_iter().collect();
        assert_eq!(evaluate(&script, &bindings, &mut tools, 100).unwrap(), Value::from("from Persian"));
    }

    #[test]
    fn nested_failures_extend_the_trace() {
        let script = parse("for e in [1] {\n    x = call_tool(\"inner\")\n}\nresult = x").unwrap();
        let mut nested = |_: &str, _: Record| -> Result<Value, DispatchError> {
            Err(DispatchError::Nested(RuntimeIssue {
                kind: RuntimeIssueKind::TypeError,
                message: "bad".into(),
                trace: vec![TraceFrame { line: 4, summary: "y = null + 1".into(), skill: Some("inner".into()) }],
                inputs: Record::new(),
            }))
        };
        let issue = evaluate(&script, &Record::new(), &mut nested, 100).unwrap_err();
        assert_eq!(issue.kind, RuntimeIssueKind::TypeError);
        let lines: Vec<usize> = issue.trace.iter().map(|f| f.line).collect();
        assert_eq!(lines, vec![1, 2, 4]);
        assert_eq!(issue.trace[0].summary, "for e in [1] {");
    }
}
