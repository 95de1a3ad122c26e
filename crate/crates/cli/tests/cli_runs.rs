//! Runs the built binary end to end.

use std::process::{Command, Output};

fn creal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_creal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "pi/sqrt(2)", "--eps", "1e-4"], 0),
        (&["eval", "1/(1-1)"], 4),
        (&["eval", "sqrt(-2)"], 4),
        (&["eval", "sqrt("], 3),
        (&["eval", "x + 1"], 3),
        (&["eval", "1", "--eps", "0"], 3),
        (&["superclass", "interval", "0", "1", "--member", "1/2", "--eps", "1/100", "--depth", "1000"], 0),
        (&["superclass", "interval", "0", "1", "--member", "2", "--eps", "1/4"], 1),
        (&["superclass", "interval", "0", "1", "--member", "1/3", "--eps", "1e-9", "--depth", "10"], 2),
        (&["superclass", "interval", "1", "0", "--member", "0"], 3),
        (&["derive", "x*x", "--at", "3"], 0),
        (&["derive", "pi*x", "--at", "3"], 3),
        (&["demo", "zeno"], 0),
        (&["demo", "nested"], 0),
        (&["demo", "zerodiv"], 0),
        (&["nonsense"], 3),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let o = creal(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["eval", "e * pi - sqrt(3)", "--eps", "1e-30"][..],
        &["demo", "zerodiv"],
        &["demo", "zeno", "--eps", "1e-2", "--depth", "500"],
        &["derive", "x*x*x - 2*x", "--at", "-3/2", "--dx", "1/3^n", "--eps", "1e-8", "--depth", "25"],
    ] {
        let (a, b) = (creal(args), creal(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn eval_readout_is_within_tolerance() {
    // Oracle: pi/sqrt(2) = 2.2214414690791831235...
    let o = creal(&["eval", "pi/sqrt(2)", "--eps", "1e-4"]);
    let text = stdout(&o);
    let value: f64 = text.split(" = ").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((value - 2.221_441_469_079_183).abs() <= 1e-4, "{text}");
    assert!(text.trim_end().ends_with("± 1e-4"));
    assert_eq!(stdout(&creal(&["eval", "1 - 1"])), "1 - 1 = 0 (exact)\n");
}

#[test]
fn negative_arguments_are_accepted() {
    let o = creal(&["superclass", "interval", "-inf", "-1/2", "--member", "-3", "--eps", "1/8", "--depth", "5000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = creal(&["derive", "x*x", "--at", "-2", "--eps", "1e-6", "--depth", "30"]);
    assert!(stdout(&o).contains("estimate    = -3.99999999"));
}
