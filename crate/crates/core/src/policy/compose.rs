//! Template composition of skill scripts from tool schemas.
//!
//! Composed skills are level-agnostic: they take the entity parameter plus a
//! `tools` list and run one guarded block per family data tool, so a skill
//! saved on an easy task serves a hard task of the same family unchanged.

use crate::fabric::catalog::{DerivedDef, Term};
use crate::fabric::FamilyDef;
use crate::library::EXECUTE_SKILL;
use crate::script::{parse, render_canonical, ScriptSource};
use crate::suite::Task;
use crate::value::format_number;

/// Name of the `tools` parameter every composed skill takes.
pub const TOOLS_PARAM: &str = "tools";

const TEMPS: [&str; 7] = ["record", "raw", "score", "valid", "value", "entity", "out"];

/// A skill ready to be saved.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedSkill {
    pub name: String,
    pub script: ScriptSource,
    pub parameters: Vec<String>,
    pub description: String,
}

fn lit(s: &str) -> String {
    serde_json::to_string(s).expect("string literal")
}

fn canonical(source: &str) -> ScriptSource {
    let ast = parse(source).unwrap_or_else(|e| panic!("composer produced an invalid script: {e}\n{source}"));
    ScriptSource::new(render_canonical(&ast)).expect("non-empty script")
}

fn check_param(param: &str) {
    assert!(!TEMPS.contains(&param) && param != TOOLS_PARAM, "entity parameter '{param}' collides with a composer temporary");
}

/// `signature=<family>:<t1>,<t2>,...` over the full family tool list.
pub fn skill_signature(family: &FamilyDef) -> String {
    format!("signature={}:{}", family.name, family.tool_names().join(","))
}

pub fn skill_name(family: &FamilyDef) -> String {
    format!("process_{}_complete", family.skill_stem)
}

fn describe(family: &FamilyDef, what: &str) -> String {
    format!("{what} {} {}. {}", family.entity_singular, family.domain, skill_signature(family))
}

fn fetch_block(out: &mut String, family: &FamilyDef, tool: &str, arg: &str) {
    let def = family.tool(tool).expect("family tool");
    let fields: Vec<String> = def.fields.iter().map(|f| format!("{}: raw.{}", f.name, f.name)).collect();
    out.push_str(&format!("raw = call_tool({}, {}={arg})\n", lit(tool), family.entity_param));
    out.push_str(&format!("record.{tool} = {{{}}}\n", fields.join(", ")));
}

fn term_tools(terms: &[Term]) -> Vec<&'static str> {
    let mut tools: Vec<&str> = Vec::new();
    for t in terms {
        if !tools.contains(&t.tool) {
            tools.push(t.tool);
        }
    }
    tools
}

fn label_chain(out: &mut String, d: &DerivedDef) {
    let Some(label) = d.label_field else { return };
    let value = format!("record.{}", d.field);
    if d.bands.is_empty() {
        out.push_str(&format!("record.{label} = {}\n", lit(d.fallback_label)));
        return;
    }
    for (i, band) in d.bands.iter().enumerate() {
        let kw = if i == 0 { "if" } else { "} else if" };
        out.push_str(&format!("{kw} {value} >= {} {{\nrecord.{label} = {}\n", format_number(band.min), lit(band.label)));
    }
    out.push_str(&format!("}} else {{\nrecord.{label} = {}\n}}\n", lit(d.fallback_label)));
}

/// Null-guarded derived metric over `terms`; `guard_tools` wraps each term in
/// a `contains(tools, ...)` check.
fn guarded_derived(out: &mut String, d: &DerivedDef, terms: &[Term], guard_tools: bool) {
    out.push_str(&format!("score = {}\nvalid = true\n", format_number(d.constant)));
    for t in terms {
        if guard_tools {
            out.push_str(&format!("if contains({TOOLS_PARAM}, {}) {{\n", lit(t.tool)));
        }
        out.push_str(&format!(
            "value = record.{}.{}\nif value == null {{\nvalid = false\n}} else {{\nscore = score + {} * value\n}}\n",
            t.tool,
            t.field,
            format_number(t.weight)
        ));
        if guard_tools {
            out.push_str("}\n");
        }
    }
    out.push_str(&format!("if valid {{\nrecord.{} = round(score, 2)\n", d.field));
    label_chain(out, d);
    out.push_str(&format!("}} else {{\nrecord.{} = null\n", d.field));
    if let Some(label) = d.label_field {
        out.push_str(&format!("record.{label} = null\n"));
    }
    out.push_str("}\n");
}

fn any_tool_condition(tools: &[&str]) -> String {
    tools.iter().map(|t| format!("contains({TOOLS_PARAM}, {})", lit(t))).collect::<Vec<_>>().join(" or ")
}

/// Flat per-entity skill: one guarded fetch block per family tool, field
/// extraction, and the null-guarded derived metric.
pub fn compose_family_skill(family: &FamilyDef, param: &str) -> ComposedSkill {
    check_param(param);
    let mut src = String::from("record = {}\n");
    for tool in family.tool_names() {
        src.push_str(&format!("if contains({TOOLS_PARAM}, {}) {{\n", lit(tool)));
        fetch_block(&mut src, family, tool, param);
        src.push_str("}\n");
    }
    let d = &family.derived;
    src.push_str(&format!("if {} {{\n", any_tool_condition(&term_tools(d.terms))));
    guarded_derived(&mut src, d, d.terms, true);
    src.push_str("}\nresult = record\n");
    ComposedSkill {
        name: skill_name(family),
        script: canonical(&src),
        parameters: vec![param.to_string(), TOOLS_PARAM.to_string()],
        description: describe(family, "Fetches and assembles one"),
    }
}

/// The skill a task needs, parameterized by `param`.
pub fn compose_skill(task: &Task, param: &str) -> ScriptSource {
    compose_family_skill(task.family_def(), param).script
}

/// Low / medium / high skills for hierarchical mode. The medium level
/// computes the derived metric without a null guard.
pub fn compose_tower(family: &FamilyDef) -> [ComposedSkill; 3] {
    let param = family.entity_param;
    check_param(param);
    let stem = family.skill_stem;
    let low_name = format!("process_{stem}_fetch");
    let mid_name = format!("process_{stem}_entity");
    let high_name = format!("process_{stem}_all");
    let params = vec![param.to_string(), TOOLS_PARAM.to_string()];

    let mut low = String::from("record = {}\n");
    for tool in family.tool_names() {
        low.push_str(&format!("if contains({TOOLS_PARAM}, {}) {{\n", lit(tool)));
        fetch_block(&mut low, family, tool, param);
        low.push_str("}\n");
    }
    low.push_str("result = record\n");

    let d = &family.derived;
    let mut score = format_number(d.constant);
    for t in d.terms {
        score.push_str(&format!(
            " + {} * get(get(record, {}, {{}}), {}, 0)",
            format_number(t.weight),
            lit(t.tool),
            lit(t.field)
        ));
    }
    let mut mid = format!(
        "record = call_tool({}, skill_name={}, args={{{param}: {param}, {TOOLS_PARAM}: {TOOLS_PARAM}}})\nscore = {score}\n",
        lit(EXECUTE_SKILL),
        lit(&low_name)
    );
    mid.push_str(&format!("if {} {{\nrecord.{} = round(score, 2)\n", any_tool_condition(&term_tools(d.terms)), d.field));
    label_chain(&mut mid, d);
    mid.push_str("}\nresult = record\n");

    let high = format!(
        "out = {{}}\nfor entity in entities {{\nout[entity] = call_tool({}, skill_name={}, args={{{param}: entity, {TOOLS_PARAM}: {TOOLS_PARAM}}})\n}}\nresult = out\n",
        lit(EXECUTE_SKILL),
        lit(&mid_name)
    );

    [
        ComposedSkill {
            name: low_name,
            script: canonical(&low),
            parameters: params.clone(),
            description: describe(family, "Low level: fetches the raw tool groups for one"),
        },
        ComposedSkill {
            name: mid_name,
            script: canonical(&mid),
            parameters: params,
            description: describe(family, "Medium level: builds the full record, derived metrics included, for one"),
        },
        ComposedSkill {
            name: high_name,
            script: canonical(&high),
            parameters: vec!["entities".to_string(), TOOLS_PARAM.to_string()],
            description: describe(family, "High level: assembles the final output over every"),
        },
    ]
}

/// A parameterless one-off script with the task's entities and tools
/// hardcoded.
pub fn compose_direct(task: &Task) -> ScriptSource {
    let family = task.family_def();
    let entities: Vec<String> = task.entities.iter().map(|e| lit(e)).collect();
    let mut src = format!("result = {{}}\nfor entity in [{}] {{\nrecord = {{}}\n", entities.join(", "));
    for tool in &task.required_tools {
        fetch_block(&mut src, family, tool, "entity");
    }
    let terms = family.active_terms(&task.required_tools);
    if !terms.is_empty() {
        guarded_derived(&mut src, &family.derived, &terms, false);
    }
    src.push_str("result[entity] = record\n}\n");
    canonical(&src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fabric::{self, build_registry, Workspace};
    use crate::library::SkillLibrary;
    use crate::script::{free_variables, DispatchError};
    use crate::suite::{generate_suite, oracle, Level};
    use crate::value::{Record, Value};
    use std::collections::BTreeSet;

    fn cocktail_h1() -> Task {
        Task::new(
            "cocktail-menu-generator",
            Level::H1,
            ["Mojito", "Margarita", "Old Fashioned", "Cosmopolitan", "Negroni"].map(String::from).to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn cocktail_skill_shape() {
        let task = cocktail_h1();
        let skill = compose_family_skill(task.family_def(), "name");
        assert_eq!(skill.name, "process_cocktail_complete");
        let src = skill.script.as_str();
        assert_eq!(src.matches("call_tool(").count(), 5);
        let ast = skill.script.parse().unwrap();
        let mut free: Vec<String> = free_variables(&ast).into_iter().collect();
        free.sort();
        assert_eq!(free, vec!["name".to_string(), "tools".to_string()]);
        assert_eq!(compose_skill(&task, "name"), skill.script);
        // canonical form is a fixed point
        assert_eq!(ScriptSource::new(render_canonical(&ast)).unwrap(), skill.script);
    }

    #[test]
    fn every_composed_script_parses() {
        for task in generate_suite(&fabric::family_names(), 2).unwrap() {
            let fam = task.family_def();
            assert!(compose_skill(&task, fam.entity_param).parse().is_ok(), "{}", task.id);
            assert!(compose_direct(&task).parse().is_ok(), "{}", task.id);
            for s in compose_tower(fam) {
                assert!(s.script.parse().is_ok(), "{} {}", task.id, s.name);
            }
        }
    }

    fn run_flat(task: &Task, edge: &[&str]) -> (Vec<Value>, Record) {
        let edge: BTreeSet<String> = edge.iter().map(|s| s.to_string()).collect();
        let reg = build_registry(&task.family, 3, &edge).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        let mut lib = SkillLibrary::new();
        let fam = task.family_def();
        let skill = compose_family_skill(fam, fam.entity_param);
        lib.save_skill(&skill.name, skill.script.as_str(), &skill.parameters, &skill.description).unwrap();
        let tools = Value::List(task.required_tools.iter().map(|t| Value::from(t.as_str())).collect());
        let mut dispatch = |tool: &str, args: Record| reg.invoke(&mut ws, tool, &args).map_err(|e| DispatchError::Failed(e.to_string()));
        let results = task
            .entities
            .iter()
            .map(|e| {
                let args: Record = [(fam.entity_param.to_string(), Value::from(e.as_str())), ("tools".to_string(), tools.clone())]
                    .into_iter()
                    .collect();
                lib.execute_skill(&skill.name, &args, &mut dispatch, 0).unwrap().to_value()
            })
            .collect();
        (results, oracle(&reg, task).unwrap())
    }

    #[test]
    fn flat_skill_reproduces_the_oracle_at_every_level() {
        for task in generate_suite(&fabric::family_names(), 4).unwrap() {
            let (results, expected) = run_flat(&task, &[]);
            for (entity, out) in task.entities.iter().zip(results) {
                assert_eq!(out.get("status"), Some(&Value::from("success")), "{} {entity}", task.id);
                assert_eq!(out.get("result").unwrap().to_json(), expected[entity.as_str()].to_json(), "{} {entity}", task.id);
            }
        }
    }

    #[test]
    fn flat_skill_on_edge_entity_fails_quality() {
        let task = cocktail_h1();
        let (results, _) = run_flat(&task, &["Negroni"]);
        assert_eq!(results[4].get("status"), Some(&Value::from("failed")));
        assert_eq!(results[4].get("result").unwrap().get("error_type"), Some(&Value::from("quality_check_failed")));
        assert!(results[..4].iter().all(|r| r.get("status") == Some(&Value::from("success"))));
    }

    #[test]
    fn direct_script_reproduces_the_oracle() {
        for task in generate_suite(&["gitlab-deep-analysis", "cat-facts-collector"], 8).unwrap() {
            let reg = build_registry(&task.family, 3, &BTreeSet::new()).unwrap();
            let dir = tempfile::tempdir().unwrap();
            let mut ws = Workspace::open(dir.path()).unwrap();
            let mut dispatch = |tool: &str, args: Record| reg.invoke(&mut ws, tool, &args).map_err(|e| DispatchError::Failed(e.to_string()));
            let out = crate::library::execute_transient(compose_direct(&task).as_str(), &mut dispatch, 100_000);
            assert!(out.is_success(), "{}", task.id);
            assert_eq!(out.result.to_json(), Value::Record(oracle(&reg, &task).unwrap()).to_json());
        }
    }
}
