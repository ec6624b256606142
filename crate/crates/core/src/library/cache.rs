use std::fs;
use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;
use serde_json::Value as Json;

use super::{ExecutionStats, LibraryError, SkillEntry};
use crate::script::ScriptSource;

/// JSON text with `", "` and `": "` separators, keys in stored order.
pub fn to_spaced_json(value: &Json) -> String {
    let mut out = String::new();
    write_spaced(value, &mut out);
    out
}

fn write_spaced(value: &Json, out: &mut String) {
    match value {
        Json::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_spaced(item, out);
            }
            out.push(']');
        }
        Json::Object(map) => {
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&serde_json::to_string(k).expect("key serializes"));
                out.push_str(": ");
                write_spaced(v, out);
            }
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar serializes")),
    }
}

pub(crate) fn render(entries: &IndexMap<String, SkillEntry>) -> String {
    let skills: serde_json::Map<String, Json> = entries
        .iter()
        .map(|(name, e)| {
            let entry = serde_json::json!({
                "script_code": e.script.as_str(),
                "parameters": e.parameters,
                "description": e.description,
                "version": e.version,
                "execution_stats": {
                    "success_count": e.execution_stats.success_count,
                    "failure_count": e.execution_stats.failure_count,
                },
            });
            (name.clone(), entry)
        })
        .collect();
    let mut root = serde_json::Map::new();
    root.insert("skills".into(), Json::Object(skills));
    to_spaced_json(&Json::Object(root))
}

/// Writes `text` next to `path` and renames it into place.
pub(crate) fn write_atomic(path: &Path, text: &str) -> Result<(), LibraryError> {
    let io = |source| LibraryError::Io { path: path.display().to_string(), source };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(io)?;
        }
    }
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(text.as_bytes()).map_err(io)?;
    file.sync_all().map_err(io)?;
    drop(file);
    fs::rename(&tmp, path).map_err(io)
}

pub(crate) fn parse(path: &Path, text: &str) -> Result<IndexMap<String, SkillEntry>, LibraryError> {
    let bad = |field: String, detail: &str| LibraryError::Cache {
        path: path.display().to_string(),
        field,
        detail: detail.to_string(),
    };
    let root: Json = serde_json::from_str(text).map_err(|e| bad("$".into(), &format!("invalid JSON: {e}")))?;
    let skills = root
        .get("skills")
        .ok_or_else(|| bad("skills".into(), "missing"))?
        .as_object()
        .ok_or_else(|| bad("skills".into(), "must be an object"))?;
    let mut entries = IndexMap::new();
    for (name, raw) in skills {
        let at = |field: &str| format!("skills.{name}.{field}");
        let obj = raw.as_object().ok_or_else(|| bad(format!("skills.{name}"), "must be an object"))?;
        let text_field = |field: &str| -> Result<String, LibraryError> {
            obj.get(field)
                .and_then(Json::as_str)
                .map(str::to_string)
                .ok_or_else(|| bad(at(field), "must be a string"))
        };
        let script = ScriptSource::new(text_field("script_code")?).map_err(|_| bad(at("script_code"), "must not be empty"))?;
        let description = text_field("description")?;
        let parameters = obj
            .get("parameters")
            .and_then(Json::as_array)
            .ok_or_else(|| bad(at("parameters"), "must be a list"))?
            .iter()
            .map(|p| p.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(at("parameters"), "must contain only strings"))?;
        let version = obj
            .get("version")
            .and_then(Json::as_u64)
            .filter(|v| *v >= 1)
            .ok_or_else(|| bad(at("version"), "must be an integer >= 1"))?;
        let stats = obj
            .get("execution_stats")
            .and_then(Json::as_object)
            .ok_or_else(|| bad(at("execution_stats"), "must be an object"))?;
        let count = |field: &str| {
            stats
                .get(field)
                .and_then(Json::as_u64)
                .ok_or_else(|| bad(at(&format!("execution_stats.{field}")), "must be a non-negative integer"))
        };
        let execution_stats = ExecutionStats { success_count: count("success_count")?, failure_count: count("failure_count")? };
        entries.insert(
            name.clone(),
            SkillEntry { name: name.clone(), script, parameters, description, version: version as u32, execution_stats },
        );
    }
    Ok(entries)
}
