use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::Path;
use std::process::{Command, Output};
use std::thread;

use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistparity"))
        .args(args)
        .env("TWISTPARITY_CACHE_DIR", cache)
        .env_remove("TWISTPARITY_LMFDB_URL")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn curve_info_from_label_and_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--offline", "--format", "json", "curve-info", "737.a1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["version"], 1);
    assert_eq!(v["result"]["curve"]["conductor"], "737");
    assert_eq!(v["result"]["curve"]["bad_primes"], serde_json::json!([11, 67]));
    let out = run(dir.path(), &["--format", "json", "curve-info", "[0,-1,1,-7820,-263580]", "--traces", "5"]);
    let v = json(&out);
    assert_eq!(v["result"]["curve"]["conductor"], "11");
    assert_eq!(v["result"]["traces"], serde_json::json!([[2, -2], [3, -1], [5, 1]]));
}

#[test]
fn curve_record_file_with_string_entries() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.json");
    std::fs::write(&f, r#"{"label": "56.b1", "ainvs": ["0", "-1", "0", "0", "-4"]}"#).unwrap();
    let out = run(dir.path(), &["--format", "json", "curve-info", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["curve"]["conductor"], "56");
    std::fs::write(&f, r#"{"ainvs": [0, -1, 0, 0, -4, 0]}"#).unwrap();
    let out = run(dir.path(), &["curve-info", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn congruence_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "json", "congruence", "--e1", "52.a1", "--e2", "364.a1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["status"], "supported");
    let out = run(dir.path(), &["--format", "json", "congruence", "--e1", "11.a2", "--e2", "52.a1", "--p", "3", "--bound", "50"]);
    assert_eq!(json(&out)["result"]["status"], "refuted");
}

#[test]
fn parity_report_is_versioned_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--offline", "--format", "json", "parity", "--e1", "52.a1", "--e2", "364.a1", "--p", "5", "--field", "builtin:s3-257"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["version"], 1);
    assert_eq!(v["root_side_ratio"], -1);
    assert_eq!(v["delta_side_parity"], 1);
    assert_eq!(v["w2"], -1);
    assert_eq!(v["thm4_consistent"], true);
}

#[test]
fn parity_with_custom_field_and_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let field = format!("custom:{FIXTURES}/field_d5_1093.json");
    let out = run(
        dir.path(),
        &["--format", "json", "parity", "--e1", "[0,-1,1,-7820,-263580]", "--e2", "[0,-1,1,406,-686]", "--p", "3", "--field", &field, "--sigma", "2dim-a"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["root_side_ratio"], 1);
    assert_eq!(v["w2"], 1);
    let out = run(dir.path(), &["parity", "--e1", "11.a2", "--e2", "737.a1", "--p", "3", "--field", &field, "--sigma", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parity_text_and_kummer_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["parity", "--e1", "56.b1", "--e2", "392.c1", "--p", "3", "--field", "kummer:2", "--sigma", "2dim"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("consistent"), "{text}");
}

#[test]
fn hypothesis_failure_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["parity", "--e1", "11.a2", "--e2", "52.a1", "--p", "3", "--field", "builtin:d5-1093"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn alc_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "json", "alc", "--e1", "11.a2", "--e2", "737.a1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json(&out)["result"].as_array().unwrap().clone();
    assert!(recs.iter().all(|r| r["consistent"] == true));
    let out = run(dir.path(), &["--format", "json", "selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["result"]["cases"].as_u64().unwrap() > 0);
    assert_eq!(v["result"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn label_errors_and_offline_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["curve-info", "not-a-label"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(dir.path(), &["--offline", "curve-info", "37.a1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not cached"));
    // a cache hit is served offline
    std::fs::write(dir.path().join("37.a1.json"), r#"{"label": "37.a1", "ainvs": [0, 0, 1, -1, 0]}"#).unwrap();
    let out = run(dir.path(), &["--offline", "--format", "json", "curve-info", "37.a1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["curve"]["conductor"], "37");
}

/// One-shot HTTP server returning `body`; yields the request line.
fn serve_once(body: &'static str) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/api/ec_curvedata/", listener.local_addr().unwrap());
    let h = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut first = String::new();
        reader.read_line(&mut first).unwrap();
        loop {
            let mut line = String::new();
            reader.read_line(&mut line).unwrap();
            if line == "\r\n" || line.is_empty() {
                break;
            }
        }
        write!(
            stream,
            "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
            body.len(),
            body
        )
        .unwrap();
        first
    });
    (url, h)
}

#[test]
fn fetch_writes_through_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let (url, h) = serve_once(r#"{"data": [{"lmfdb_label": "37.a1", "ainvs": [0, 0, 1, -1, 0]}], "next": null}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_twistparity"))
        .args(["--format", "json", "curve-info", "37.a1"])
        .env("TWISTPARITY_CACHE_DIR", dir.path())
        .env("TWISTPARITY_LMFDB_URL", &url)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let request = h.join().unwrap();
    assert!(request.contains("label=37.a1") && request.contains("_format=json"), "{request}");
    assert_eq!(json(&out)["result"]["curve"]["conductor"], "37");
    // only the cache file remains; the temp file was renamed into place
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, ["37.a1.json"]);
    let out = run(dir.path(), &["--offline", "curve-info", "37.a1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_label_and_network_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (url, h) = serve_once(r#"{"data": []}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_twistparity"))
        .args(["curve-info", "9999.zz1"])
        .env("TWISTPARITY_CACHE_DIR", dir.path())
        .env("TWISTPARITY_LMFDB_URL", &url)
        .output()
        .unwrap();
    h.join().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no curve labelled"));
    assert!(!dir.path().join("9999.zz1.json").exists());

    // nothing listens on this port once the listener is dropped
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let out = Command::new(env!("CARGO_BIN_EXE_twistparity"))
        .args(["curve-info", "9999.zz1"])
        .env("TWISTPARITY_CACHE_DIR", dir.path())
        .env("TWISTPARITY_LMFDB_URL", format!("http://127.0.0.1:{port}/"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("network error"));
}
