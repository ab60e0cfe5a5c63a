use std::io::Write;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_arrangetop");

fn run(args: &[&str], threads: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("ARRANGETOP_THREADS", t);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    for args in [
        &["report", "--builtin", "ceva3", "--format", "json"][..],
        &["braid", "--builtin", "a3", "--format", "json"][..],
        &["resonance", "--builtin", "b3", "--format", "json"][..],
    ] {
        let (c1, one, _) = run(args, Some("1"));
        let (c4, four, _) = run(args, Some("4"));
        let (_, again, _) = run(args, None);
        assert_eq!((c1, c4), (0, 0));
        assert_eq!(one, four);
        assert_eq!(one, again);
    }
}

#[test]
fn emitted_input_round_trips() {
    for name in ["ceva3", "b3", "generic(4)"] {
        let (_, text, _) = run(&["lattice", "--builtin", name, "--emit-input"], None);
        let f = temp_file(&text);
        let path = f.path().to_str().unwrap();
        let (code, again, _) = run(&["lattice", path, "--emit-input"], None);
        assert_eq!(code, 0);
        let strip = |s: &str| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(&text), strip(&again));
        let (_, a, _) = run(&["lattice", "--builtin", name, "--format", "json"], None);
        let (_, b, _) = run(&["lattice", path, "--format", "json"], None);
        assert_eq!(a, b);
    }
}

#[test]
fn file_input() {
    let f = temp_file("# three coordinate lines\nconductor 3\n1,0,0\n0,1,0\n0,0,1\n");
    let (code, out, _) = run(&["spectrum", f.path().to_str().unwrap(), "--format", "json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"]["0"], 2);
    assert_eq!(v["b1F"], 2);
}

#[test]
fn exit_codes() {
    let f = temp_file("conductor 3\n1,0,0\n0,1,0\n2,0,0\n");
    let (code, _, err) = run(&["lattice", f.path().to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert!(err.contains("lines 1 and 3 coincide"), "{err}");

    let f = temp_file("conductor 3\n1,0,0\n0,1,0\n0,0,z +\n");
    let (code, _, err) = run(&["lattice", f.path().to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"), "{err}");

    assert_eq!(run(&["lattice", "--builtin", "nonesuch"], None).0, 1);
    assert_eq!(run(&["lattice"], None).0, 1);
    assert_eq!(run(&["lattice", "--builtin", "ceva3", "--unknown"], None).0, 1);
    assert_eq!(run(&["pencil", "--builtin", "triangle", "--blocks", "[[1],[2],[3]]"], None).0, 2);
    assert_eq!(run(&["pencil", "--builtin", "ceva3", "--blocks", "[[1,2],[3]"], None).0, 1);
    assert_eq!(
        run(&["pencil", "--builtin", "b3", "--blocks", "[[[1,2],8,9],[[2,2],6,7],[[3,2],4,5]]"], None).0,
        2
    );
    assert_eq!(run(&["cover", "--builtin", "triangle", "--point", "1"], None).0, 2);
    assert_eq!(run(&["--help"], None).0, 0);
}

#[test]
fn text_report_ends_with_the_verdict() {
    let (code, out, _) = run(&["report", "--builtin", "triangle"], None);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("verdict INCONCLUSIVE"));
}
