use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn torelli_g4() {
    let o = run(&["torelli", "g4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "t*T4 = 16 lambda1");
    let m = run(&["--machine", "torelli", "g4"]);
    assert_eq!(stdout(&m).trim(), "t*T4\t16 lambda1");
}

#[test]
fn torelli_g5_machine() {
    let o = run(&["--machine", "torelli", "g5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["2c3(N)\t454/15 kappa3", "m(3,3)\t-20", "[H5]\t31/30 kappa3", "t*T5\t48/5 kappa3"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn torelli_abar4() {
    let o = run(&["torelli", "abar4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16*lambda1 - 2*D"));
}

#[test]
fn excess_values_and_exit_codes() {
    let o = run(&["excess", "m", "--da", "3", "--db", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-20");
    for (a, b, m) in [("1", "1", "-2"), ("2", "1", "-3")] {
        assert_eq!(stdout(&run(&["excess", "m", "--da", a, "--db", b])).trim(), m);
    }
    let bad = run(&["excess", "m", "--da", "0", "--db", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["period", "tau", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn machine_output_is_stable() {
    let args = ["--machine", "period", "tau", "--curve", "c1"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let asym: f64 = out.lines().find_map(|l| l.strip_prefix("asymmetry\t")).unwrap().parse().unwrap();
    assert!(asym < 1e-8);
}

#[test]
fn constants_are_display_only() {
    let out = stdout(&run(&["constants"]));
    for key in ["taut(T5)", "taut(T6)", "taut(T7)", "[H5] = 31/30 kappa3"] {
        assert!(out.contains(key), "{key}");
    }
    assert!(out.contains("display-only"));
}

#[test]
fn ctp_components() {
    let out = stdout(&run(&["--machine", "ctp", "components", "--g", "4"]));
    assert!(out.lines().any(|l| l == "count\t9"));
    let dims: Vec<&str> = out.lines().filter_map(|l| l.strip_prefix("component.dim\t")).collect();
    assert_eq!(dims.iter().filter(|d| **d == "10").count(), 1);
}

#[test]
fn explain_mode() {
    let out = stdout(&run(&["--explain", "torelli", "g4"]));
    assert!(out.starts_with("explain:"));
    assert!(out.contains("t*T4 = 16 lambda1"));
}

#[test]
fn selftest_single_criterion() {
    let o = run(&["--machine", "selftest", "--criterion", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "criterion.3\tpass"));
}
