use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cremona(args: &[&str], stdin: Option<&str>, workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cremona"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match workers {
        Some(w) => cmd.env("CREMONA_WORKERS", w),
        None => cmd.env_remove("CREMONA_WORKERS"),
    };
    let mut child = cmd.spawn().unwrap();
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_statuses() {
    let ok = cremona(&["invert", "--set", "x1*x2, x1*x3, x2*x3", "--json"], None, None);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"gamma\": [1, 1, 1]"));

    let parse = cremona(&["invert", "--set", "x1*+x2"], None, None);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("malformed token"));

    let contract = cremona(&["invert", "--set", "x1*x2, x2*x3, x3*x4, x4*x1"], None, None);
    assert_eq!(contract.status.code(), Some(2));

    let usage = cremona(&["no-such-command"], None, None);
    assert_eq!(usage.status.code(), Some(1));

    let help = cremona(&["--help"], None, None);
    assert_eq!(help.status.code(), Some(0));

    let workers = cremona(&["analyze", "--set", "x1*x2, x1*x3, x2*x3"], None, Some("zero"));
    assert_eq!(workers.status.code(), Some(1));
}

#[test]
fn reads_files_and_stdin() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("loop_set.txt");
    std::fs::write(&path, "# loop with a path\nvars: x1, x2, x3\nx1^2\nx1*x2\nx2*x3\n").unwrap();
    let from_file = cremona(&["invert", path.to_str().unwrap()], None, None);
    assert_eq!(from_file.status.code(), Some(0));
    assert!(stdout(&from_file).contains("gamma: [2,1,0]"));

    let from_stdin = cremona(&["invert", "-"], Some("x1^2\nx1*x2\nx2*x3\n"), None);
    assert_eq!(stdout(&from_stdin), stdout(&from_file));
}

#[test]
fn output_is_deterministic_across_runs_and_workers() {
    let quadrics = "x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2";
    let cases: [&[&str]; 4] = [
        &["extract-cremona", "--set", quadrics, "--json"],
        &["normal-check", "--bound", "3", "--set", quadrics, "--json"],
        &["hilbert-check", "--bound", "2", "--set", "x1^2, x2^2", "--json"],
        &["classify", "--set", "x1*x2, x2*x3, x3*x4, x4*x5, x5*x1", "--format", "json"],
    ];
    for args in cases {
        let baseline = cremona(args, None, Some("1"));
        assert_eq!(baseline.status.code(), Some(0));
        for workers in [None, Some("1"), Some("4")] {
            assert_eq!(cremona(args, None, workers).stdout, baseline.stdout, "{args:?}");
        }
    }
}

#[test]
fn generate_pipes_into_other_commands() {
    let generated = cremona(&["generate", "7", "3", "--seed", "11"], None, None);
    assert_eq!(generated.status.code(), Some(0));
    let text = stdout(&generated);
    assert_eq!(stdout(&cremona(&["generate", "7", "3", "--seed", "11"], None, None)), text);

    let classified = cremona(&["classify", "--json"], Some(&text), None);
    assert_eq!(classified.status.code(), Some(0));
    let inverted = cremona(&["invert", "--json"], Some(&text), None);
    assert_eq!(inverted.status.code(), Some(0));
    let c: serde_json::Value = serde_json::from_slice(&classified.stdout).unwrap();
    let i: serde_json::Value = serde_json::from_slice(&inverted.stdout).unwrap();
    assert_eq!(c["inverse_degree"], i["delta"]);

    let as_json = cremona(&["generate", "7", "3", "--seed", "11", "--json"], None, None);
    let again = cremona(&["classify", "--json"], Some(&stdout(&as_json)), None);
    assert_eq!(again.stdout, classified.stdout);

    let infeasible = cremona(&["generate", "4", "2"], None, None);
    assert_eq!(infeasible.status.code(), Some(2));
}

#[test]
fn dot_export() {
    let out = cremona(&["export-dot", "--set", "x2*x3, x1^2, x1*x2"], None, None);
    assert_eq!(
        stdout(&out),
        "graph G_F {\n  \"x2\";\n  \"x3\";\n  \"x1\";\n  \"x2\" -- \"x3\";\n  \"x2\" -- \"x1\";\n  \"x1\" -- \"x1\";\n}\n"
    );
}
