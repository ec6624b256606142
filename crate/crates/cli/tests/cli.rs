use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skillcraft"))
}

#[test]
fn gen_suite_respects_family_filter() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tasks.json");
    let status = bin()
        .args(["gen-suite", "--families", "cat-facts-collector,open-meteo-weather", "--seed", "9", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let tasks = json["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 12);
    assert_eq!(tasks[0]["id"], "cat-facts-collector/e1");
}

#[test]
fn unknown_family_and_mode_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["gen-suite", "--families", "nope", "--out"]).arg(dir.path().join("t.json")).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let out = bin().args(["run", "--mode", "turbo", "--tasks", "x", "--out", "y"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("turbo"));
}

#[test]
fn run_and_compare_on_one_family() {
    let dir = tempfile::tempdir().unwrap();
    let tasks = dir.path().join("tasks.json");
    assert!(bin().args(["gen-suite", "--families", "vocabulary-builder", "--out"]).arg(&tasks).output().unwrap().status.success());
    for mode in ["base", "direct"] {
        let out = bin().args(["run", "--mode", mode, "--workers", "2", "--tasks"]).arg(&tasks).arg("--out").arg(dir.path().join(mode)).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).contains("success 100.0%"));
    }
    let out = bin()
        .args(["compare", "--format", "csv", "--base"])
        .arg(dir.path().join("base"))
        .arg("--variant")
        .arg(dir.path().join("direct"))
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("direct vs base,"));
    assert_eq!(std::fs::read_to_string(dir.path().join("direct").join("report.csv")).unwrap(), text);
}

#[test]
fn serve_over_stdio_answers_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let mut child = bin()
        .args(["serve", "--stdio", "--family", "cocktail-menu-generator", "--workspace"])
        .arg(dir.path())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let requests = [
        r#"{"id":1,"method":"save_macro","params":{"macro_name":"m","script_code":"result = call_tool(\"search\", name=name)","parameters":["name"]}}"#,
        r#"{"id":2,"method":"list_skills","params":{}}"#,
        r#"{"id":3,"method":"execute_skill","params":{"skill_name":"m","args":{"name":"Mojito"}}}"#,
        r#"{"id":4,"method":"nope","params":{}}"#,
    ];
    child.stdin.take().unwrap().write_all((requests.join("\n") + "\n").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.iter().map(|l| l["id"].as_i64().unwrap()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    assert_eq!(lines[0]["ok"], true, "{}", lines[0]);
    assert!(lines[1]["value"].as_str().unwrap().starts_with("Skill 1: m"));
    assert_eq!(lines[2]["value"]["status"], "success");
    assert_eq!(lines[3]["error"]["kind"], "unknown_method");
    assert!(dir.path().join("skill_cache.json").is_file());
}

#[cfg(unix)]
#[test]
fn socket_connections_get_separate_sessions() {
    use std::io::{BufRead, BufReader};
    use std::os::unix::net::UnixStream;
    let dir = tempfile::tempdir().unwrap();
    let socket = dir.path().join("sc.sock");
    let mut child = bin().args(["serve", "--socket"]).arg(&socket).arg("--workspace").arg(dir.path()).spawn().unwrap();
    let start = std::time::Instant::now();
    while !socket.exists() && start.elapsed().as_secs() < 10 {
        std::thread::sleep(std::time::Duration::from_millis(20));
    }
    let ask = |line: &str| {
        let mut s = UnixStream::connect(&socket).unwrap();
        writeln!(s, "{line}").unwrap();
        let mut resp = String::new();
        BufReader::new(s).read_line(&mut resp).unwrap();
        resp
    };
    let saved = ask(r#"{"id":1,"method":"save_skill","params":{"skill_name":"a","script_code":"result = 1"}}"#);
    assert!(saved.contains(r#""ok":true"#), "{saved}");
    let listed = ask(r#"{"id":2,"method":"list_skills","params":{}}"#);
    assert_eq!(listed.trim(), r#"{"id":2,"ok":true,"value":""}"#);
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(dir.path().join("session-1").join("skill_cache.json").is_file());
}
