//! Acceptance gate: one PASS/FAIL line per criterion, each with its pinned
//! tolerance and time limit. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use creal::calculus::{derivative_at, symbolic_derivative, Poly};
use creal::real::{const_e, const_pi, const_sqrt};
use creal::superclass::{
    family_endpoints, graph_step, is_limit_point, is_pair_limit_point, ExtendedPoint, FamilyKind, SuperClass,
};
use creal::{Int, Nat, Rat, RatSeq, Real};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d).unwrap()
}

fn at(x: Rat) -> ExtendedPoint {
    ExtendedPoint::rat(x)
}

fn creal(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_creal")).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)).map(|v| v.trim_start_matches([' ', '=']).trim())
}

fn derivative_example() -> Outcome {
    let (code, out) = creal(&["derive", "x*x", "--at", "3", "--dx", "1/2^n", "--eps", "1e-6", "--depth", "30"]);
    let estimate: Option<Rat> = field(&out, "estimate").and_then(|v| v.parse().ok());
    let holds = field(&out, "cauchy").is_some_and(|v| v.starts_with("holds-to-depth"));
    // the printed estimate is truncated; the exact term is 6 + 2^-30
    let close = estimate.as_ref().is_some_and(|e| e.sub(&Rat::from_integer(6)).abs() <= Rat::pow10_neg(6));
    let shown = estimate.map_or("missing".into(), |e| e.to_decimal_string(10));
    outcome(
        code == 0 && holds && close,
        format!("estimate {shown}, within 1e-6 of 6: {close}, holds-to-depth: {holds}"),
    )
}

fn geometric_identity() -> Outcome {
    let v = Real::dyadic_series().eq_test(&Real::one(), &Rat::pow10_neg(8), 64).unwrap();
    outcome(v.is_true(), format!("eq_test(sum 2^-k, 1, 1e-8, 64) = {v}"))
}

fn family_limit(kind: FamilyKind, p: (i64, i64)) -> Outcome {
    let f = family_endpoints(kind);
    let v = is_pair_limit_point(
        &f,
        (&at(Rat::from_integer(p.0)), &at(Rat::from_integer(p.1))),
        &Rat::pow10_neg(3),
        3,
        10_000,
    )
    .unwrap();
    outcome(v.is_true(), format!("({}, {}) at eps 1e-3, count 3, depth 1e4: {v}", p.0, p.1))
}

fn closure_endpoints() -> Outcome {
    let unit = SuperClass::closed(Rat::zero(), Rat::one()).unwrap();
    let eps = Rat::pow10_neg(4);
    let verdicts: Vec<_> = [Rat::zero(), Rat::one()]
        .into_iter()
        .map(|p| is_limit_point(&unit, &at(p), &eps, 3, 100_000).unwrap())
        .collect();
    outcome(
        verdicts.iter().all(|v| v.is_true()),
        format!("0: {}, 1: {} at eps 1e-4, depth 1e5", verdicts[0], verdicts[1]),
    )
}

fn zerodiv_demo() -> Outcome {
    let (code, out) = creal(&["demo", "zerodiv"]);
    let values: Vec<Option<Rat>> =
        out.lines().filter_map(|l| l.trim().strip_prefix("value")).map(|v| v.trim().parse().ok()).collect();
    let tol = Rat::pow10_neg(9);
    let near = |i: usize, target: i64| {
        values.get(i).cloned().flatten().is_some_and(|v| v.sub(&Rat::from_integer(target)).abs() <= tol)
    };
    let non_cauchy = out.contains("counterexample (eps 1/2") && out.contains("none: not Cauchy");
    let ok = code == 0 && near(0, 1) && near(1, 2) && non_cauchy;
    outcome(
        ok,
        format!(
            "1/n over 1/n -> 1: {}, 2/n over 1/n -> 2: {}, (-1)^n/n over 1/n non-Cauchy at 1/2: {non_cauchy}",
            near(0, 1),
            near(1, 2)
        ),
    )
}

fn segments_unbounded() -> Outcome {
    let s = family_endpoints(FamilyKind::Segments);
    let v = is_pair_limit_point(&s, (&ExtendedPoint::NegInf, &ExtendedPoint::PosInf), &Rat::pow10_neg(3), 3, 10_000)
        .unwrap();
    outcome(v.is_true(), format!("(-inf, +inf) beyond bound 1e3, depth 1e4: {v}"))
}

fn step_graph() -> Outcome {
    let g = graph_step();
    let eps = q(1, 8);
    let check = |x: Rat, y: Rat| is_pair_limit_point(&g, (&at(x), &at(y)), &eps, 3, 10_000).unwrap();
    let (riser, left, wrong) = (
        check(Rat::zero(), q(3, 2)),
        check(Rat::from_integer(-1), Rat::one()),
        check(Rat::from_integer(-1), Rat::from_integer(2)),
    );
    outcome(
        riser.is_true() && left.is_true() && !wrong.is_true(),
        format!("(0, 3/2): {riser}; (-1, 1): {left}; (-1, 2): {wrong}"),
    )
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn raw_int() -> impl Strategy<Value = Int> {
    (0u64..=1_000_000, 0u64..=1_000_000).prop_map(|(m, n)| Int::from_pair(Nat::from(m), Nat::from(n)))
}

fn raw_rat() -> impl Strategy<Value = Rat> {
    (raw_int(), 1u64..=1_000_000, 0u64..=1_000_000)
        .prop_map(|(num, d, s)| Rat::from_pair(num, Int::from_pair(Nat::from(d + s), Nat::from(s))).unwrap())
}

fn builtin(i: usize, r: &Rat) -> Real {
    match i % 6 {
        0 => const_pi(),
        1 => const_e(),
        2 => const_sqrt(&r.abs()).unwrap(),
        3 => Real::dyadic_series(),
        4 => Real::from_rat(r.clone()),
        _ => const_pi().mul(&const_sqrt(&Rat::from_integer(2)).unwrap()).sub(&Real::from_rat(r.clone())),
    }
}

fn property_suites() -> Outcome {
    let mut report = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, r: Result<(), String>| {
        ok &= r.is_ok();
        report.push(match r {
            Ok(()) => format!("{name} ok"),
            Err(e) => format!("{name} FAILED: {e}"),
        });
    };

    let ints = runner(10_000).run(&(raw_int(), raw_int(), raw_int()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.negate()).is_zero());
        Ok(())
    });
    record("int ring laws x1e4", ints.map_err(|e| e.to_string()));

    let rats = runner(10_000).run(&(raw_rat(), raw_rat(), raw_rat()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap().mul(&b), a);
        }
        Ok(())
    });
    record("rat ring laws x1e4", rats.map_err(|e| e.to_string()));

    let small = (-1000i64..=1000, 1i64..=97).prop_map(|(n, d)| q(n, d));
    let moduli = runner(1000).run(&(0usize..6, small.clone(), 1u32..=8, 1usize..40, 1usize..40), |(i, r, k, a, b)| {
        let x = builtin(i, &r);
        let eps = Rat::pow10_neg(k);
        let n = x.modulus(&eps);
        prop_assert!(x.seq().eval(n + a).sub(&x.seq().eval(n + b)).abs() < eps);
        Ok(())
    });
    record("modulus soundness x1e3", moduli.map_err(|e| e.to_string()));

    let polys = proptest::collection::vec(-10i64..=10, 1..=6).prop_map(|c| Poly::from_integers(&c));
    let points = (-40i64..=40, 5i64..=10).prop_map(|(n, d)| q(n, d));
    let derivs = runner(200).run(&(polys, points), |(f, x)| {
        let r = derivative_at(&f, &x, &RatSeq::geometric(q(1, 2)), &Rat::pow10_neg(6), 40).unwrap();
        prop_assert!(r.estimate.sub(&symbolic_derivative(&f).eval(&x)).abs() <= Rat::pow10_neg(5));
        Ok(())
    });
    record("derivative vs power rule x200", derivs.map_err(|e| e.to_string()));

    let lts = runner(100).run(&(0usize..6, small, 1usize..200), |(i, r, depth)| {
        let x = builtin(i, &r);
        prop_assert!(!x.lt_test(&x, depth).is_true());
        Ok(())
    });
    record("lt(x, x) never true x100", lts.map_err(|e| e.to_string()));

    outcome(ok, report.join("; "))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "derivative of x^2 at 3", limit: secs(1), run: derivative_example },
        Criterion { id: 2, name: "1/2 + 1/4 + 1/8 + ... = 1", limit: secs(1), run: geometric_identity },
        Criterion {
            id: 3,
            name: "zeno family includes [1, 1]",
            limit: secs(5),
            run: || family_limit(FamilyKind::Zeno, (1, 1)),
        },
        Criterion {
            id: 4,
            name: "nested family includes [0, 0]",
            limit: secs(5),
            run: || family_limit(FamilyKind::Nested, (0, 0)),
        },
        Criterion { id: 5, name: "[0, 1] contains its endpoints", limit: secs(10), run: closure_endpoints },
        Criterion { id: 6, name: "0/0 depends on representation", limit: secs(1), run: zerodiv_demo },
        Criterion { id: 7, name: "segment family reaches (-inf, +inf)", limit: secs(2), run: segments_unbounded },
        Criterion { id: 8, name: "property suites", limit: secs(120), run: property_suites },
        Criterion { id: 9, name: "step function graph", limit: secs(5), run: step_graph },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let o = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = o.ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} criterion {}: {} -- {} [{:.3}s, limit {}s{}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            o.detail,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
