use super::compose::{compose_direct, compose_family_skill, compose_tower, skill_signature, TOOLS_PARAM};
use super::{Episode, Halt, EXEC_SCRIPT};
use crate::fabric::{derived_fields, CLAIM_DONE, LIST_DIRECTORY, WRITE_FILE};
use crate::library::{EXECUTE_SKILL, LIST_SKILLS, SAVE_SKILL};
use crate::value::{Record, Value};

/// Consecutive failed executions for one entity before falling back to
/// atomic tool calls.
pub const FALLBACK_THRESHOLD: usize = 3;

fn args<const N: usize>(pairs: [(&str, Value); N]) -> Record {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn str_list(items: &[String]) -> Value {
    Value::List(items.iter().map(|s| Value::from(s.as_str())).collect())
}

fn succeeded(observation: &Value) -> Option<&Value> {
    (observation.get("status") == Some(&Value::from("success"))).then(|| observation.get("result")).flatten()
}

/// Calls the task's required tools for `entity` and assembles its record
/// from the raw responses.
fn fetch_atomic(ep: &mut Episode, entity: &str) -> Result<Value, Halt> {
    let family = ep.task().family_def();
    let tools = ep.task().required_tools.clone();
    let mut record = Record::new();
    for tool in &tools {
        let raw = ep.act(tool, args([(family.entity_param, Value::from(entity))]))?;
        let def = family.tool(tool).expect("required tool");
        let group: Record =
            def.fields.iter().map(|f| (f.name.to_string(), raw.get(f.name).cloned().unwrap_or(Value::Null))).collect();
        record.insert(tool.clone(), Value::Record(group));
    }
    for (k, v) in derived_fields(family, &tools, &record) {
        record.insert(k, v);
    }
    Ok(Value::Record(record))
}

fn finish(ep: &mut Episode, output: Option<Record>) -> Result<(), Halt> {
    if let Some(out) = output {
        let path = ep.task().output_file.clone();
        ep.act(WRITE_FILE, args([("path", Value::Str(path)), ("content", Value::Str(Value::Record(out).to_json()))]))?;
    }
    ep.act(CLAIM_DONE, args([("status", Value::from("completed"))]))?;
    Ok(())
}

/// Atomic tool calls for every entity, then write and claim.
pub fn run_baseline(ep: &mut Episode) -> Result<(), Halt> {
    let mut out = Record::new();
    for entity in ep.task().entities.clone() {
        let record = fetch_atomic(ep, &entity)?;
        out.insert(entity, record);
    }
    finish(ep, Some(out))
}

fn listing_has(listing: &Value, name: &str, signature: &str) -> bool {
    listing.as_str().is_some_and(|text| {
        text.lines().any(|line| {
            line.split_once(": ")
                .and_then(|(_, rest)| rest.split_once(" -- "))
                .is_some_and(|(n, desc)| n == name && desc.ends_with(signature))
        })
    })
}

/// List, reuse or compose-and-save, execute per entity with the 3-failure
/// fallback, write, claim. Against a locked library the save is rejected and
/// every entity falls back.
pub fn run_skill(ep: &mut Episode) -> Result<(), Halt> {
    let family = ep.task().family_def();
    let skill = compose_family_skill(family, family.entity_param);
    let listing = ep.act(LIST_SKILLS, Record::new())?;
    let mut usable = listing_has(&listing, &skill.name, &skill_signature(family));
    if !usable {
        let ack = ep.act(
            SAVE_SKILL,
            args([
                ("skill_name", Value::from(skill.name.as_str())),
                ("script_code", Value::from(skill.script.as_str())),
                ("parameters", str_list(&skill.parameters)),
                ("description", Value::from(skill.description.as_str())),
            ]),
        )?;
        usable = ack.get("error").is_none();
    }
    let tools = str_list(&ep.task().required_tools);
    let mut out = Record::new();
    for entity in ep.task().entities.clone() {
        let mut record = None;
        if usable {
            for _ in 0..FALLBACK_THRESHOLD {
                let call_args = args([(family.entity_param, Value::from(entity.as_str())), (TOOLS_PARAM, tools.clone())]);
                let obs = ep.act(EXECUTE_SKILL, args([("skill_name", Value::from(skill.name.as_str())), ("args", Value::Record(call_args))]))?;
                if let Some(result) = succeeded(&obs) {
                    record = Some(result.clone());
                    break;
                }
            }
        }
        let record = match record {
            Some(r) => r,
            None => fetch_atomic(ep, &entity)?,
        };
        out.insert(entity, record);
    }
    finish(ep, Some(out))
}

/// Saves a three-level tower and runs it with one top-level execute. A failed
/// top-level execution is not retried; the episode claims done without an
/// output file.
pub fn run_hierarchical(ep: &mut Episode) -> Result<(), Halt> {
    let family = ep.task().family_def();
    let tower = compose_tower(family);
    let listing = ep.act(LIST_SKILLS, Record::new())?;
    let signature = skill_signature(family);
    for skill in &tower {
        if !listing_has(&listing, &skill.name, &signature) {
            ep.act(
                SAVE_SKILL,
                args([
                    ("skill_name", Value::from(skill.name.as_str())),
                    ("script_code", Value::from(skill.script.as_str())),
                    ("parameters", str_list(&skill.parameters)),
                    ("description", Value::from(skill.description.as_str())),
                ]),
            )?;
        }
    }
    let top_args = args([("entities", str_list(&ep.task().entities)), (TOOLS_PARAM, str_list(&ep.task().required_tools))]);
    let obs = ep.act(EXECUTE_SKILL, args([("skill_name", Value::from(tower[2].name.as_str())), ("args", Value::Record(top_args))]))?;
    let output = succeeded(&obs).and_then(Value::as_record).cloned();
    finish(ep, output)
}

/// One hardcoded script through exec_script; on failure, atomic calls for
/// the whole task.
pub fn run_direct_exec(ep: &mut Episode) -> Result<(), Halt> {
    let script = compose_direct(ep.task());
    let obs = ep.act(EXEC_SCRIPT, args([("script_code", Value::from(script.as_str()))]))?;
    let output = match succeeded(&obs).and_then(Value::as_record) {
        Some(out) => out.clone(),
        None => {
            let mut out = Record::new();
            for entity in ep.task().entities.clone() {
                let record = fetch_atomic(ep, &entity)?;
                out.insert(entity, record);
            }
            out
        }
    };
    finish(ep, Some(output))
}

/// Writes a partial answer for the first entity, then polls the workspace
/// until a limit stops it. Never claims done.
pub fn run_adversarial(ep: &mut Episode) -> Result<(), Halt> {
    if let Some(first) = ep.task().entities.first().cloned() {
        let record = fetch_atomic(ep, &first)?;
        let out: Record = [(first, record)].into_iter().collect();
        let path = ep.task().output_file.clone();
        ep.act(WRITE_FILE, args([("path", Value::Str(path)), ("content", Value::Str(Value::Record(out).to_json()))]))?;
    }
    loop {
        ep.act(LIST_DIRECTORY, args([("path", Value::from("."))]))?;
    }
}
