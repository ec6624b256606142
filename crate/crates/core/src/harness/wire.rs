//! Newline-delimited JSON protocol exposing the skill primitives and the
//! simulated tools to external agents.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::fabric::{build_registry, Registry, Workspace};
use crate::library::{call_primitive, canonical_primitive, SkillLibrary, DEFAULT_NESTING_LIMIT};
use crate::policy::RegistryTools;
use crate::script::NoTools;
use crate::suite::{self, inject_cross_summary, render_prompt, Level, Task};
use crate::value::{Record, Value};

use super::runner::{HarnessError, CACHE_FILE};

pub const CALL_TOOL: &str = "call_tool";
pub const RENDER_PROMPT: &str = "render_prompt";
pub const SCORE_TASK: &str = "score_task";

#[derive(Debug, Clone, PartialEq)]
pub struct ServeConfig {
    pub seed: u64,
    /// Family used when a request does not name one.
    pub family: Option<String>,
    pub hierarchical: bool,
    pub nesting_limit: u32,
}

impl Default for ServeConfig {
    fn default() -> Self {
        ServeConfig { seed: 0, family: None, hierarchical: false, nesting_limit: DEFAULT_NESTING_LIMIT }
    }
}

struct WireError {
    kind: String,
    detail: Value,
}

impl WireError {
    fn new(kind: &str, detail: impl Into<String>) -> Self {
        WireError { kind: kind.to_string(), detail: Value::Str(detail.into()) }
    }
}

/// One client's state: a library cached at `<root>/skill_cache.json` and a
/// workspace at `<root>/workspace/`.
pub struct Session {
    config: ServeConfig,
    library: SkillLibrary,
    workspace: Workspace,
    registries: HashMap<String, Registry>,
}

impl Session {
    pub fn open(root: &Path, config: ServeConfig) -> Result<Session, HarnessError> {
        let workspace = Workspace::open(root.join("workspace"))?;
        let mut library = SkillLibrary::load(root.join(CACHE_FILE)).map_err(crate::policy::PolicyError::from)?;
        library.set_hierarchical(config.hierarchical);
        library.set_nesting_limit(config.nesting_limit);
        Ok(Session { config, library, workspace, registries: HashMap::new() })
    }

    pub fn library(&self) -> &SkillLibrary {
        &self.library
    }

    fn family_of(&self, params: &Record) -> Result<Option<String>, WireError> {
        match params.get("family") {
            Some(Value::Str(f)) => Ok(Some(f.clone())),
            Some(other) => Err(WireError::new("bad_arguments", format!("family must be a string, got {}", other.type_name()))),
            None => Ok(self.config.family.clone()),
        }
    }

    fn registry(&mut self, family: &str) -> Result<&Registry, WireError> {
        if !self.registries.contains_key(family) {
            let reg = build_registry(family, self.config.seed, &Default::default())
                .map_err(|e| WireError::new(e.kind(), e.to_string()))?;
            self.registries.insert(family.to_string(), reg);
        }
        Ok(&self.registries[family])
    }

    /// Handles one request line and returns the response line (without the
    /// trailing newline).
    pub fn handle_line(&mut self, line: &str) -> String {
        let request = match serde_json::from_str::<serde_json::Value>(line) {
            Ok(serde_json::Value::Object(map)) => map,
            Ok(_) => return respond(Value::Null, Err(WireError::new("malformed_request", "request must be a JSON object"))),
            Err(e) => return respond(Value::Null, Err(WireError::new("malformed_request", e.to_string()))),
        };
        let id = match request.get("id") {
            Some(v @ serde_json::Value::Number(_)) => Value::from(v.clone()),
            _ => return respond(Value::Null, Err(WireError::new("malformed_request", "missing integer id"))),
        };
        let method = match request.get("method") {
            Some(serde_json::Value::String(m)) => m.clone(),
            _ => return respond(id, Err(WireError::new("malformed_request", "missing method"))),
        };
        let params = match request.get("params").cloned().map(Value::from) {
            None | Some(Value::Null) => Record::new(),
            Some(Value::Record(r)) => r,
            Some(_) => return respond(id, Err(WireError::new("malformed_request", "params must be an object"))),
        };
        let result = self.dispatch(&method, &params);
        respond(id, result)
    }

    fn dispatch(&mut self, method: &str, params: &Record) -> Result<Value, WireError> {
        if canonical_primitive(method).is_some() {
            let family = self.family_of(params)?;
            if let Some(f) = &family {
                self.registry(f)?;
            }
            let Session { library, workspace, registries, .. } = self;
            let outcome = match family.as_deref().and_then(|f| registries.get(f)) {
                Some(registry) => call_primitive(library, method, params, &mut RegistryTools { registry, workspace }),
                None => call_primitive(library, method, params, &mut NoTools),
            };
            library.take_execution_log();
            return outcome.map_err(|e| WireError { kind: e.kind, detail: e.detail });
        }
        match method {
            CALL_TOOL => {
                let tool = match params.get("tool") {
                    Some(Value::Str(t)) => t.clone(),
                    _ => return Err(WireError::new("bad_arguments", "missing string 'tool'")),
                };
                let args = match params.get("args") {
                    None | Some(Value::Null) => Record::new(),
                    Some(Value::Record(r)) => r.clone(),
                    Some(_) => return Err(WireError::new("bad_arguments", "args must be an object")),
                };
                let family = self.family_of(params)?.ok_or_else(|| WireError::new("no_family", "call_tool needs params.family or a server --family"))?;
                self.registry(&family)?;
                let registry = &self.registries[&family];
                registry.invoke(&mut self.workspace, &tool, &args).map_err(|e| WireError::new(e.kind(), e.to_string()))
            }
            RENDER_PROMPT => {
                let task = task_param(params)?;
                let prompt = render_prompt(&task);
                let with_summary = matches!(params.get("cross_task_summary"), Some(Value::Bool(true)));
                Ok(Value::Str(if with_summary { inject_cross_summary(&prompt, &self.library) } else { prompt }))
            }
            SCORE_TASK => {
                let task = task_param(params)?;
                let registry = self.registry(&task.family)?;
                let expected = suite::oracle(registry, &task).map_err(|e| WireError::new(e.kind(), e.to_string()))?;
                let report = suite::score(&task, &self.workspace, &expected);
                Ok(Value::from(serde_json::to_value(&report).expect("score serializes")))
            }
            other => Err(WireError::new("unknown_method", format!("unknown method '{other}'"))),
        }
    }
}

/// `params.task` as a full task object, or `family` + `level` + `entities`.
fn task_param(params: &Record) -> Result<Task, WireError> {
    if let Some(task) = params.get("task") {
        let json: serde_json::Value = task.into();
        return serde_json::from_value(json).map_err(|e| WireError::new("bad_arguments", format!("invalid task: {e}")));
    }
    let family = params.get("family").and_then(Value::as_str).ok_or_else(|| WireError::new("bad_arguments", "missing task or family"))?;
    let level: Level = params
        .get("level")
        .and_then(Value::as_str)
        .ok_or_else(|| WireError::new("bad_arguments", "missing level"))?
        .parse()
        .map_err(|e: suite::SuiteError| WireError::new("bad_arguments", e.to_string()))?;
    let entities = params
        .get("entities")
        .and_then(Value::as_list)
        .ok_or_else(|| WireError::new("bad_arguments", "missing entities"))?
        .iter()
        .map(|e| e.as_str().map(str::to_string).ok_or_else(|| WireError::new("bad_arguments", "entities must be strings")))
        .collect::<Result<Vec<_>, _>>()?;
    Task::new(family, level, entities).map_err(|e| WireError::new("bad_arguments", e.to_string()))
}

fn respond(id: Value, result: Result<Value, WireError>) -> String {
    let body = match result {
        Ok(value) => Value::record([("id", id), ("ok", Value::Bool(true)), ("value", value)]),
        Err(e) => Value::record([
            ("id", id),
            ("ok", Value::Bool(false)),
            ("error", Value::record([("kind", Value::Str(e.kind)), ("detail", e.detail)])),
        ]),
    };
    body.to_json()
}

/// Serves requests from `input` in order until end of input.
pub fn serve_stream(session: &mut Session, input: impl BufRead, mut output: impl Write) -> std::io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(output, "{}", session.handle_line(&line))?;
        output.flush()?;
    }
    Ok(())
}

/// Accepts connections on a Unix socket; each connection gets its own
/// session under `<root>/session-<n>/` and its own thread.
#[cfg(unix)]
pub fn serve_socket(socket: &Path, root: &Path, config: ServeConfig) -> Result<(), HarnessError> {
    use std::os::unix::net::UnixListener;
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| HarnessError::Io { path, source }
    };
    if socket.exists() {
        std::fs::remove_file(socket).map_err(io(socket))?;
    }
    let listener = UnixListener::bind(socket).map_err(io(socket))?;
    for (n, stream) in listener.incoming().enumerate() {
        let stream = stream.map_err(io(socket))?;
        let dir: PathBuf = root.join(format!("session-{}", n + 1));
        let config = config.clone();
        std::thread::spawn(move || {
            let Ok(mut session) = Session::open(&dir, config) else { return };
            let Ok(reader) = stream.try_clone() else { return };
            let _ = serve_stream(&mut session, BufReader::new(reader), stream);
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session() -> (Session, tempfile::TempDir) {
        let dir = tempfile::tempdir().unwrap();
        let config = ServeConfig { family: Some("cocktail-menu-generator".into()), ..ServeConfig::default() };
        (Session::open(dir.path(), config).unwrap(), dir)
    }

    #[test]
    fn list_on_empty_library() {
        let (mut s, _d) = session();
        assert_eq!(s.handle_line(r#"{"id":1,"method":"list_skills","params":{}}"#), r#"{"id":1,"ok":true,"value":""}"#);
    }

    #[test]
    fn unknown_skill_and_malformed_frames() {
        let (mut s, _d) = session();
        let resp = s.handle_line(r#"{"id":2,"method":"execute_skill","params":{"skill_name":"x","args":{}}}"#);
        assert!(resp.starts_with(r#"{"id":2,"ok":false,"error":{"kind":"unknown_skill""#), "{resp}");
        let resp = s.handle_line("{not json");
        assert!(resp.starts_with(r#"{"id":null,"ok":false,"error":{"kind":"malformed_request""#), "{resp}");
        let resp = s.handle_line(r#"{"id":3,"method":"teleport","params":{}}"#);
        assert!(resp.contains(r#""kind":"unknown_method""#));
    }

    #[test]
    fn save_then_get_returns_verbatim_script() {
        let (mut s, dir) = session();
        let script = "raw = call_tool(\"details\", name=name)\nresult = {n:   raw.ingredient_count}";
        let save = Value::record([
            ("id", Value::from(1i64)),
            ("method", Value::from("save_skill")),
            (
                "params",
                Value::record([
                    ("skill_name", Value::from("count")),
                    ("script_code", Value::from(script)),
                    ("parameters", Value::List(vec!["name".into()])),
                ]),
            ),
        ]);
        assert!(s.handle_line(&save.to_json()).contains(r#""ok":true"#));
        let got = s.handle_line(r#"{"id":2,"method":"get_skill","params":{"skill_name":"count"}}"#);
        let v = Value::from_json_str(&got).unwrap();
        assert_eq!(v.get("value").unwrap().get("script_code").unwrap().as_str(), Some(script));
        let exec = s.handle_line(r#"{"id":3,"method":"execute_skill","params":{"skill_name":"count","args":{"name":"Mojito"}}}"#);
        assert!(exec.contains(r#""status":"success""#), "{exec}");
        assert!(dir.path().join(CACHE_FILE).exists());
    }

    #[test]
    fn tools_prompts_and_scoring() {
        let (mut s, _d) = session();
        let resp = s.handle_line(r#"{"id":1,"method":"call_tool","params":{"tool":"search","args":{"name":"Mojito"}}}"#);
        assert!(resp.contains("verbose_description"));
        let prompt = s.handle_line(r#"{"id":2,"method":"render_prompt","params":{"family":"cat-facts-collector","level":"e1","entities":["Persian","Siamese","Maine Coon"]}}"#);
        assert!(prompt.contains("cat_encyclopedia.json"));
        let score = s.handle_line(r#"{"id":3,"method":"score_task","params":{"family":"cocktail-menu-generator","level":"e1","entities":["Mojito","Margarita","Negroni"]}}"#);
        assert!(score.contains(r#""total":0"#) || score.contains(r#""total":0.0"#), "{score}");
    }
}
