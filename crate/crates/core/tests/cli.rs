use std::io::Write;
use std::process::{Command, Stdio};

use onepass::cli::cli_main;
use onepass::extraction::LassoModel;
use onepass::formula::parse;
use onepass::oracle::{brute_sat, eval_lasso};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str], stdin: &str) -> Run {
    let mut argv = vec!["onepass"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli_main(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn always_p_with_model() {
    let r = run(&["solve", "-", "--model"], "G p\n");
    assert_eq!(r.code, 10);
    assert_eq!(r.out, "SAT\nprefix: | period: {p}\n");
    assert_eq!(r.err, "");
}

#[test]
fn figure_formula_is_unsat() {
    let r = run(&["solve", "-"], "G (p & q) & F !p\n");
    assert_eq!((r.code, r.out.as_str()), (20, "UNSAT\n"));
}

#[test]
fn alternating_example_is_sat() {
    let s = "p & G(p <-> X !p) & G(q -> !p) & G(r -> !p) & G(q -> !r) & G F q & G F r";
    let r = run(&["solve", "-", "--model"], &format!("{s}\n"));
    assert_eq!(r.code, 10);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("SAT"));
    let model: LassoModel = lines.next().unwrap().parse().unwrap();
    let f = parse(s).unwrap();
    assert!(eval_lasso(f, &model));
    assert!(brute_sat(f, 4, 4).is_some());
}

#[test]
fn mixed_inputs_keep_order() {
    let input = "# comment\np\n\np & !p\nF p\n";
    let r = run(&["solve", "-"], input);
    assert_eq!(r.out, "SAT\nUNSAT\nSAT\n");
    assert_eq!(r.code, 0);
    let par = run(&["solve", "-", "--threads", "8"], input);
    assert_eq!(par.out, r.out);
}

#[test]
fn flags_do_not_change_verdicts() {
    let input = "G F p & G F !p\nG (p & q) & F !p\np U q & G !q\n";
    let base = run(&["solve", "-"], input).out;
    for flags in [
        &["--no-prune0"][..],
        &["--pivot=small"],
        &["--pivot", "event"],
        &["--defer-first"],
        &["--threads=4"],
    ] {
        let mut args = vec!["solve", "-"];
        args.extend_from_slice(flags);
        assert_eq!(run(&args, input).out, base, "{flags:?}");
    }
}

#[test]
fn trace_goes_to_stderr() {
    let r = run(&["solve", "-", "--trace"], "G p\n");
    assert_eq!(r.out, "SAT\n");
    let lines: Vec<&str> = r.err.lines().collect();
    assert_eq!(lines[0], "# G p");
    assert_eq!(lines[1], "0 | G | G p | {G p}");
    assert!(lines[2].starts_with("=1 | TRANSITION | - |"));
    assert_eq!(lines.last().unwrap(), &"3 | TICK(LOOP -> ancestor 1) | - | {p, X G p}");
}

#[test]
fn parse_errors_exit_one() {
    let r = run(&["solve", "-"], "p\np &\n");
    assert_eq!(r.code, 1);
    assert_eq!(r.out, "");
    assert!(r.err.starts_with("-:2:4: expected"), "{}", r.err);
}

#[test]
fn budget_exhaustion_exits_two() {
    let r = run(&["solve", "-", "--budget", "3"], "G F p & G F q & G F r\np\n");
    assert_eq!(r.code, 2);
    assert_eq!(r.out, "UNKNOWN\nSAT\n");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["solve"], "").code, 1);
    assert_eq!(run(&["solve", "-", "--pivot", "random"], "p\n").code, 1);
    assert_eq!(run(&["frobnicate"], "").code, 1);
    assert_eq!(run(&["solve", "/definitely/not/here"], "").code, 1);
    assert_eq!(run(&["--help"], "").code, 0);
}

#[test]
fn bench_outputs() {
    let r = run(&["bench", "classic", "--json"], "");
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 11);
    for line in r.out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], v["expected"]);
        assert!(v["steps"].as_u64().unwrap() > 0);
    }
    let table = run(&["bench", "patterns"], "");
    assert_eq!(table.code, 0);
    assert_eq!(table.out.lines().count(), 19);
    assert_eq!(run(&["bench", "/no/such/suite"], "").code, 1);
}

#[test]
fn selftest_small() {
    let r = run(&["selftest", "--max-size", "4", "--atoms", "2", "--bound", "3"], "");
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.ends_with("0 violations\n"), "{}", r.out);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_onepass");
    let status = |input: &str| {
        let mut child = Command::new(exe)
            .args(["solve", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        child.wait().unwrap().code()
    };
    assert_eq!(status("G p\nF p\n"), Some(10));
    assert_eq!(status("false\n"), Some(20));
    assert_eq!(status("p\nfalse\n"), Some(0));
    assert_eq!(status("p U\n"), Some(1));
}
