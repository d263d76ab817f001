//! Black-box tests of the `gemcraft` binary: exit codes, stdin/stdout
//! plumbing, file outputs, format round-trips, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gemcraft"));
    cmd.env_remove("GEMCRAFT_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// `gen lambda 3 2 2 1` as a JSON string, the workhorse input below.
fn trefoil_json() -> String {
    let out = run(&["gen", "lambda", "3", "2", "2", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    stdout(&out)
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["-V"], &["gm", "--help"], &["gen", "--help"]] {
        let out = run(args);
        assert_eq!(code(&out), 0, "args {args:?}: {}", stderr(&out));
    }
    let version = run(&["--version"]);
    assert!(stdout(&version).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &[][..],
        &["no-such-command"],
        &["gm", "--no-such-flag", "x"],
        &["gen", "lambda", "3", "2"],
        &["export", "-"],
        &["gm"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 1, "args {args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "args {args:?} printed no diagnostics");
    }
    // --replay conflicts with a positional input and with --alpha.
    let conflict = run(&["gm", "input.json", "--replay", "report.json"]);
    assert_eq!(code(&conflict), 1);
}

#[test]
fn parse_invalid_and_io_errors_exit_two() {
    let missing = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code(&missing), 2, "{}", stderr(&missing));

    let garbage = run_stdin(&["validate", "-"], "{\"format\": \"gem-v1\"");
    assert_eq!(code(&garbage), 2, "{}", stderr(&garbage));
    assert!(stderr(&garbage).contains("error"));

    let bad_params = run(&["gen", "lambda", "1", "1", "2", "1"]);
    assert_eq!(code(&bad_params), 2, "{}", stderr(&bad_params));

    let bad_text = run_stdin(&["validate", "-"], "gem 4\n0: (0 1)\n");
    assert_eq!(code(&bad_text), 2, "{}", stderr(&bad_text));
}

#[test]
fn precondition_errors_exit_three() {
    // Splitting at the singular colour is refused.
    let trefoil = trefoil_json();
    let alpha0 = run_stdin(&["gm", "-", "--alpha", "0"], &trefoil);
    assert_eq!(code(&alpha0), 3, "{}", stderr(&alpha0));

    // Splitting colour 3 is inadmissible for a gem with boundary.
    let gem = run_stdin(&["desingularize", "-"], &trefoil);
    let alpha3 = run_stdin(&["gm", "-", "--alpha", "3"], &stdout(&gem));
    assert_eq!(code(&alpha3), 3, "{}", stderr(&alpha3));

    // A diagram fixes its own splitting surface; --alpha is refused.
    let diagram = run(&["gen", "diagram", "3", "2", "2", "1"]);
    let on_diagram = run_stdin(&["gm", "-", "--alpha", "1"], &stdout(&diagram));
    assert_eq!(code(&on_diagram), 3, "{}", stderr(&on_diagram));

    // Capping a graph without boundary.
    let sphere = "{\"format\":\"gem-v1\",\"vertices\":2,\"edges\":[[0,1,0],[0,1,1],[0,1,2],[0,1,3]]}";
    let cap = run_stdin(&["cap", "-", "0"], sphere);
    assert_eq!(code(&cap), 3, "{}", stderr(&cap));
}

#[test]
fn replay_verifies_and_tampering_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let graph_path = dir.path().join("trefoil.json");
    std::fs::write(&graph_path, trefoil_json()).unwrap();

    let saved = run(&["gm", graph_path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&saved), 0, "{}", stderr(&saved));
    std::fs::write(&report_path, &saved.stdout).unwrap();

    // Both entry points accept the stored report.
    for args in [
        vec!["replay", report_path.to_str().unwrap()],
        vec!["gm", "--replay", report_path.to_str().unwrap()],
    ] {
        let ok = run(&args);
        assert_eq!(code(&ok), 0, "{}", stderr(&ok));
        assert!(stdout(&ok).contains("replayed witness"), "{}", stdout(&ok));
    }

    // Tampering with the recorded value must be caught.
    let text = std::fs::read_to_string(&report_path).unwrap();
    let tampered = text.replace("\"value\": 0", "\"value\": 7");
    assert_ne!(text, tampered, "tampering failed to change the report");
    std::fs::write(&report_path, tampered).unwrap();
    let caught = run(&["replay", report_path.to_str().unwrap()]);
    assert_eq!(code(&caught), 4, "{}", stderr(&caught));
    assert!(stderr(&caught).contains("mismatch"), "{}", stderr(&caught));
}

#[test]
fn stdin_dash_and_output_files_work() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lambda.json");
    let direct = run(&[
        "gen",
        "lambda",
        "4",
        "3",
        "2",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&direct), 0, "{}", stderr(&direct));
    assert!(stdout(&direct).is_empty(), "-o also wrote to stdout");

    let from_file = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&from_file), 0);
    let from_stdin = run_stdin(&["validate", "-"], &std::fs::read_to_string(&path).unwrap());
    assert_eq!(code(&from_stdin), 0);
    assert_eq!(stdout(&from_file), stdout(&from_stdin));
    assert!(stdout(&from_file).contains("singular-regular"));
}

#[test]
fn compact_text_round_trips_through_the_cli() {
    let json_out = run(&["gen", "lambda", "3", "2", "2", "1"]);
    let text_out = run(&["gen", "lambda", "3", "2", "2", "1", "--text"]);
    assert_eq!(code(&text_out), 0);
    let text = stdout(&text_out);
    assert!(text.starts_with("# name: lambda((3,2),(2,1))\ngem 20\n"), "{text}");

    // Both encodings validate to the same report.
    let via_json = run_stdin(&["validate", "-"], &stdout(&json_out));
    let via_text = run_stdin(&["validate", "-"], &text);
    assert_eq!(stdout(&via_json), stdout(&via_text));
}

#[test]
fn table_has_the_documented_header_and_shape() {
    let out = run(&["table", "--max", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p\th\tq\tk\talpha\tbeta\tdelta_alpha\tdelta_beta\tformula\texhaustive_gm\tmatch")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 13, "sweep of p+q ≤ 6 has 13 tuples");
    for row in rows {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols.len(), 11, "row {row:?}");
        assert_eq!(cols[10], "true", "formula/search mismatch in row {row:?}");
    }
}

#[test]
fn export_formats_emit_expected_content() {
    let trefoil = trefoil_json();
    let dot = run_stdin(&["export", "-", "--format", "dot"], &trefoil);
    assert_eq!(code(&dot), 0, "{}", stderr(&dot));
    let dot_text = stdout(&dot);
    assert!(dot_text.starts_with("graph"), "{dot_text}");
    assert!(dot_text.contains("style=dashed"));
    assert!(dot_text.contains("cluster_face_0"));

    let svg = run_stdin(
        &["export", "-", "--format", "svg", "--order", "0,2,1,3"],
        &trefoil,
    );
    assert_eq!(code(&svg), 0, "{}", stderr(&svg));
    let svg_text = stdout(&svg);
    assert!(svg_text.starts_with("<svg"), "{svg_text}");
    assert!(svg_text.trim_end().ends_with("</svg>"));

    let json = run_stdin(&["export", "-", "--format", "json"], &trefoil);
    assert_eq!(code(&json), 0, "{}", stderr(&json));
    assert!(stdout(&json).contains("complex-v1"));

    let bad_order = run_stdin(&["export", "-", "--format", "dot", "--order", "0,1,2"], &trefoil);
    assert_eq!(code(&bad_order), 2, "{}", stderr(&bad_order));
}

#[test]
fn pipelines_compose_through_stdin() {
    // diagram → double → graph: the double of the standard diagram is the
    // Λ graph, a singular-regular colouring.
    let diagram = run(&["gen", "diagram", "3", "2", "2", "1"]);
    let doubled = run_stdin(&["double", "-"], &stdout(&diagram));
    assert_eq!(code(&doubled), 0, "{}", stderr(&doubled));
    let check = run_stdin(&["validate", "-"], &stdout(&doubled));
    assert!(stdout(&check).contains("singular-regular"), "{}", stdout(&check));

    // Λ → desingularize → gem with boundary → cap → singular-regular again.
    let trefoil = trefoil_json();
    let gem = run_stdin(&["desingularize", "-"], &trefoil);
    assert_eq!(code(&gem), 0, "{}", stderr(&gem));
    let gem_check = run_stdin(&["validate", "-"], &stdout(&gem));
    assert!(stdout(&gem_check).contains("gem with boundary"), "{}", stdout(&gem_check));

    let capped = run_stdin(&["cap", "-", "0"], &stdout(&gem));
    assert_eq!(code(&capped), 0, "{}", stderr(&capped));
    let capped_check = run_stdin(&["validate", "-"], &stdout(&capped));
    assert!(
        stdout(&capped_check).contains("singular-regular"),
        "{}",
        stdout(&capped_check)
    );
}

#[test]
fn gm_reports_are_byte_deterministic_across_runs_and_thread_counts() {
    let trefoil = trefoil_json();
    let first = run_stdin(&["gm", "-", "--format", "json"], &trefoil);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let second = run_stdin(&["gm", "-", "--format", "json"], &trefoil);
    assert_eq!(first.stdout, second.stdout);

    for threads in ["1", "3"] {
        let mut child = bin();
        child.env("GEMCRAFT_THREADS", threads);
        let mut spawned = child
            .args(["gm", "-", "--format", "json"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        spawned
            .stdin
            .as_mut()
            .unwrap()
            .write_all(trefoil.as_bytes())
            .unwrap();
        let out = spawned.wait_with_output().unwrap();
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert_eq!(first.stdout, out.stdout, "thread count {threads} changed bytes");
    }
}

#[test]
fn invalid_thread_count_exits_one() {
    let out = bin()
        .env("GEMCRAFT_THREADS", "many")
        .args(["gen", "lambda", "3", "2", "2", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    assert!(stderr(&out).contains("GEMCRAFT_THREADS"), "{}", stderr(&out));
}

#[test]
fn heuristic_mode_flags_are_accepted_and_reported() {
    let trefoil = trefoil_json();
    let out = run_stdin(
        &["gm", "-", "--mode", "heuristic", "--seed", "11", "--format", "json"],
        &trefoil,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"mode\": \"heuristic\""), "{text}");
    assert!(text.contains("\"seed\": 11"), "{text}");
}
