use super::{canonical_primitive, LibraryError, SkillLibrary, EXECUTE_SKILL, GET_SKILL, LIST_SKILLS, SAVE_SKILL};
use crate::script::ToolDispatcher;
use crate::value::{Record, Value};

/// A primitive call that could not be carried out. Failed skill executions
/// are not errors; they come back as a `status: failed` payload.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveError {
    pub kind: String,
    pub detail: Value,
}

impl PrimitiveError {
    fn bad(detail: impl Into<String>) -> Self {
        PrimitiveError { kind: "bad_arguments".into(), detail: Value::Str(detail.into()) }
    }

    pub fn to_value(&self) -> Value {
        Value::record([("kind", Value::from(self.kind.as_str())), ("detail", self.detail.clone())])
    }
}

impl From<LibraryError> for PrimitiveError {
    fn from(e: LibraryError) -> Self {
        PrimitiveError { kind: e.kind().to_string(), detail: e.detail() }
    }
}

fn name_arg(params: &Record) -> Result<String, PrimitiveError> {
    match params.get("skill_name").or_else(|| params.get("macro_name")).or_else(|| params.get("name")) {
        Some(Value::Str(s)) => Ok(s.clone()),
        Some(other) => Err(PrimitiveError::bad(format!("skill_name must be a string, got {}", other.type_name()))),
        None => Err(PrimitiveError::bad("missing argument 'skill_name'")),
    }
}

fn string_arg(params: &Record, key: &str, default: Option<&str>) -> Result<String, PrimitiveError> {
    match (params.get(key), default) {
        (Some(Value::Str(s)), _) => Ok(s.clone()),
        (Some(other), _) => Err(PrimitiveError::bad(format!("{key} must be a string, got {}", other.type_name()))),
        (None, Some(d)) => Ok(d.to_string()),
        (None, None) => Err(PrimitiveError::bad(format!("missing argument '{key}'"))),
    }
}

/// Runs one of the four primitives (or a `*_macro` alias) from wire-style
/// parameters.
pub fn call_primitive(
    lib: &mut SkillLibrary,
    method: &str,
    params: &Record,
    dispatcher: &mut dyn ToolDispatcher,
) -> Result<Value, PrimitiveError> {
    match canonical_primitive(method) {
        Some(SAVE_SKILL) => {
            let name = name_arg(params)?;
            let script = string_arg(params, "script_code", None)?;
            let parameters = match params.get("parameters") {
                None | Some(Value::Null) => Vec::new(),
                Some(Value::List(items)) => items
                    .iter()
                    .map(|v| v.as_str().map(str::to_string).ok_or_else(|| PrimitiveError::bad("parameters must be strings")))
                    .collect::<Result<_, _>>()?,
                Some(other) => return Err(PrimitiveError::bad(format!("parameters must be a list, got {}", other.type_name()))),
            };
            let description = string_arg(params, "description", Some(""))?;
            Ok(Value::Str(lib.save_skill(&name, &script, &parameters, &description)?))
        }
        Some(EXECUTE_SKILL) => {
            let name = name_arg(params)?;
            let args = match params.get("args") {
                None | Some(Value::Null) => Record::new(),
                Some(Value::Record(r)) => r.clone(),
                Some(other) => return Err(PrimitiveError::bad(format!("args must be a record, got {}", other.type_name()))),
            };
            let outcome = lib.execute_skill(&name, &args, dispatcher, 0)?;
            if !lib.is_locked() {
                lib.persist()?;
            }
            Ok(outcome.to_value())
        }
        Some(LIST_SKILLS) => Ok(Value::Str(lib.list_skills())),
        Some(GET_SKILL) => Ok(lib.get_skill(&name_arg(params)?)?.to_value()),
        _ => Err(PrimitiveError { kind: "unknown_method".into(), detail: Value::from(format!("unknown primitive '{method}'")) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::NoTools;

    fn params(pairs: &[(&str, Value)]) -> Record {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn save_get_execute_via_params() {
        let mut lib = SkillLibrary::new();
        let save = params(&[
            ("skill_name", "double".into()),
            ("script_code", "result = {v: x * 2}".into()),
            ("parameters", Value::List(vec!["x".into()])),
        ]);
        let ack = call_primitive(&mut lib, "save_macro", &save, &mut NoTools).unwrap();
        assert_eq!(ack, Value::from("Skill 'double' saved successfully."));
        let got = call_primitive(&mut lib, GET_SKILL, &params(&[("skill_name", "double".into())]), &mut NoTools).unwrap();
        assert_eq!(got.get("script_code"), Some(&Value::from("result = {v: x * 2}")));
        let exec = params(&[("skill_name", "double".into()), ("args", Value::record([("x", Value::from(4i64))]))]);
        let out = call_primitive(&mut lib, EXECUTE_SKILL, &exec, &mut NoTools).unwrap();
        assert_eq!(out.to_json(), r#"{"status":"success","result":{"v":8},"depth_used":1}"#);
    }

    #[test]
    fn errors_carry_kinds() {
        let mut lib = SkillLibrary::new();
        let exec = params(&[("skill_name", "x".into()), ("args", Value::record::<&str>([]))]);
        let err = call_primitive(&mut lib, EXECUTE_SKILL, &exec, &mut NoTools).unwrap_err();
        assert_eq!(err.kind, "unknown_skill");
        assert_eq!(call_primitive(&mut lib, GET_SKILL, &Record::new(), &mut NoTools).unwrap_err().kind, "bad_arguments");
        assert_eq!(call_primitive(&mut lib, "frobnicate", &Record::new(), &mut NoTools).unwrap_err().kind, "unknown_method");
        assert_eq!(call_primitive(&mut lib, LIST_SKILLS, &Record::new(), &mut NoTools).unwrap(), Value::from(""));
    }
}
