//! Subcommand implementations. Each returns the text to print and an exit
//! code; nothing here touches the process directly.

use std::fmt::Write as _;

use creal::calculus::{derivative_at, symbolic_derivative};
use creal::real::raw_div;
use creal::superclass::{
    family_endpoints, is_limit_point, is_pair_limit_point, Bound, ExtendedPoint, FamilyKind, SuperClass,
};
use creal::{check_cauchy_to_depth, CauchyVerdict, Comparison3, Rat, RatSeq, Real, SeqOp};

use crate::error::CliError;
use crate::expr::{exact_value, parse_expr, to_poly, to_real};
use crate::seqspec::parse_seq;

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: u8,
}

/// 0 for a confirmed verdict, 1 for a refuted one, 2 when undecided.
pub fn verdict_code(c: &Comparison3) -> u8 {
    match c {
        Comparison3::True(_) => 0,
        Comparison3::False(_) => 1,
        Comparison3::Unknown => 2,
    }
}

/// `1e-k` for powers of ten, the plain fraction otherwise.
pub fn fmt_tol(eps: &Rat) -> String {
    (0..=64u32).find(|&k| *eps == Rat::pow10_neg(k)).map_or_else(|| eps.to_string(), |k| format!("1e-{k}"))
}

/// Least `d` with `10^-d <= t`.
fn digits_for(t: &Rat) -> u32 {
    (0..).find(|&d| Rat::pow10_neg(d) <= *t).expect("positive tolerance")
}

fn parse_rat(flag: &str, text: &str) -> Result<Rat, CliError> {
    text.parse().map_err(|_| CliError::Usage(format!("{flag}: cannot parse {text:?} as a rational")))
}

fn parse_eps(text: &str) -> Result<Rat, CliError> {
    let eps = parse_rat("--eps", text)?;
    if !eps.is_positive() {
        return Err(CliError::Usage(format!("--eps must be positive, got {text}")));
    }
    Ok(eps)
}

/// Evaluates an expression to within `eps`. The readout is taken at
/// `eps/2` and truncated to a digit count whose last place is at most
/// `eps/2`, so the printed decimal is within `eps` of the value.
pub fn eval(text: &str, eps: &str) -> Result<Report, CliError> {
    let e = parse_expr(text)?;
    let eps = parse_eps(eps)?;
    if e.has_var() {
        return Err(CliError::Usage("free variable 'x' outside a derivative".into()));
    }
    if let Some(q) = exact_value(&e) {
        let q = q?;
        let shown = if q.is_decimal() { q.to_decimal_string(digits_for_exact(&q)) } else { q.to_string() };
        return Ok(Report { text: format!("{e} = {shown} (exact)\n"), code: 0 });
    }
    let x = to_real(&e)?;
    let half = eps.half();
    let a = x.approx(&half)?;
    Ok(Report { text: format!("{e} = {} ± {}\n", a.to_decimal_string(digits_for(&half)), fmt_tol(&eps)), code: 0 })
}

/// Fractional digits of a terminating decimal.
fn digits_for_exact(q: &Rat) -> u32 {
    (0..)
        .find(|&d| q.mul(&Rat::pow10_neg(d).recip().expect("nonzero")).denominator() == &creal::Int::one())
        .expect("terminating")
}

/// Parameters of `derive`.
pub struct DeriveArgs<'a> {
    pub poly: &'a str,
    pub at: &'a str,
    pub dx: &'a str,
    pub eps: &'a str,
    pub depth: usize,
}

pub fn derive(args: &DeriveArgs<'_>) -> Result<Report, CliError> {
    let f = to_poly(&parse_expr(args.poly)?)?;
    let x = parse_rat("--at", args.at)?;
    let dx = parse_seq(args.dx)?;
    let eps = parse_eps(args.eps)?;
    let r = derivative_at(&f, &x, &dx, &eps, args.depth)?;
    let df = symbolic_derivative(&f);
    let exact = df.eval(&x);
    let digits = digits_for(&eps) + 4;

    let mut out = String::new();
    let _ = writeln!(out, "f(x)        = {f}");
    let _ = writeln!(out, "x           = {x}");
    let _ = writeln!(out, "dx          = {}", dx.description());
    let _ = writeln!(out, "quotient    = (f(x + dx_n) - f(x)) / dx_n");
    let code = match &r.cauchy {
        CauchyVerdict::HoldsToDepth { settle } => {
            let _ = writeln!(
                out,
                "cauchy      = holds-to-depth (eps {}, depth {}, settled at index {settle})",
                fmt_tol(&eps),
                args.depth
            );
            0
        }
        CauchyVerdict::Counterexample { m, n, gap } => {
            let _ = writeln!(
                out,
                "cauchy      = counterexample (eps {}, |q_{m} - q_{n}| = {} >= eps)",
                fmt_tol(&eps),
                gap.to_decimal_string(digits)
            );
            1
        }
    };
    let _ = writeln!(out, "estimate    = {}", r.estimate.to_decimal_string(digits));
    let _ = writeln!(out, "symbolic    = {} (f'(x) = {df})", exact.to_decimal_string(digits));
    let _ = writeln!(out, "difference  = {}", r.estimate.sub(&exact).abs().to_decimal_string(digits));
    Ok(Report { text: out, code })
}

/// Interval end or query point: a rational or `-inf` / `+inf` / `inf`.
fn parse_bound(flag: &str, text: &str) -> Result<Bound, CliError> {
    Ok(match text.trim() {
        "-inf" => Bound::NegInf,
        "+inf" | "inf" => Bound::PosInf,
        t => Bound::Finite(parse_rat(flag, t)?),
    })
}

fn to_point(b: Bound) -> ExtendedPoint {
    match b {
        Bound::NegInf => ExtendedPoint::NegInf,
        Bound::PosInf => ExtendedPoint::PosInf,
        Bound::Finite(q) => ExtendedPoint::rat(q),
    }
}

/// Parameters of `superclass interval`.
pub struct IntervalArgs<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub member: &'a str,
    pub eps: &'a str,
    pub depth: usize,
    pub count: usize,
}

pub fn superclass_interval(args: &IntervalArgs<'_>) -> Result<Report, CliError> {
    let s = SuperClass::interval(parse_bound("a", args.a)?, parse_bound("b", args.b)?)?;
    let member = parse_bound("--member", args.member)?;
    let eps = parse_eps(args.eps)?;
    if args.count < 2 {
        return Err(CliError::Usage("--count must be at least 2".into()));
    }
    let shown = member.to_string();
    let v = is_limit_point(&s, &to_point(member), &eps, args.count, args.depth)?;
    let text = format!(
        "class       = {}\nquery       = {shown} (eps {}, depth {}, count {})\nverdict     = {}\n",
        s.description(),
        fmt_tol(&eps),
        args.depth,
        args.count,
        describe(&v)
    );
    Ok(Report { text, code: verdict_code(&v) })
}

fn describe(v: &Comparison3) -> String {
    match v {
        Comparison3::True(w) | Comparison3::False(w) => {
            format!("{} (eps {}, index {})", v.label(), fmt_tol(&w.eps), w.index)
        }
        Comparison3::Unknown => v.label().to_string(),
    }
}

/// Default effort for the interval-family demos.
pub const DEMO_COUNT: usize = 3;

fn pair_line(
    out: &mut String,
    family: &creal::superclass::PairSeq,
    p: (Rat, Rat),
    eps: &Rat,
    depth: usize,
) -> Result<Comparison3, CliError> {
    let label = format!("({}, {})", p.0, p.1);
    let v = is_pair_limit_point(family, (&ExtendedPoint::rat(p.0), &ExtendedPoint::rat(p.1)), eps, DEMO_COUNT, depth)?;
    let _ = writeln!(out, "  {label:<12} {}", describe(&v));
    Ok(v)
}

/// Endpoint pairs of the family `[0, 1/2], [1/2, 3/4], …`: members, the
/// degenerate limit `[1, 1]`, a non-member, and the stacked lengths.
pub fn demo_zeno(eps: &str, depth: usize) -> Result<Report, CliError> {
    let eps = parse_eps(eps)?;
    let z = family_endpoints(FamilyKind::Zeno);
    let q = |n, d| Rat::new(n, d).expect("positive denominator");
    let mut out = String::new();
    let _ =
        writeln!(out, "family      = {} (eps {}, depth {depth}, count {DEMO_COUNT})", z.description(), fmt_tol(&eps));
    pair_line(&mut out, &z, (q(0, 1), q(1, 2)), &eps, depth)?;
    pair_line(&mut out, &z, (q(1, 2), q(3, 4)), &eps, depth)?;
    pair_line(&mut out, &z, (q(3, 4), q(7, 8)), &eps, depth)?;
    let limit = pair_line(&mut out, &z, (q(1, 1), q(1, 1)), &eps, depth)?;
    pair_line(&mut out, &z, (q(0, 1), q(1, 1)), &eps, depth)?;
    let sum = Real::dyadic_series().eq_test(&Real::one(), &eps, 64)?;
    let _ = writeln!(out, "sum 2^-k = 1 {}", describe(&sum));
    let code = verdict_code(&limit).max(verdict_code(&sum));
    Ok(Report { text: out, code })
}

/// The nested family `[-2^-k, 2^-k]` and its limit `[0, 0]`.
pub fn demo_nested(eps: &str, depth: usize) -> Result<Report, CliError> {
    let eps = parse_eps(eps)?;
    let n = family_endpoints(FamilyKind::Nested);
    let mut out = String::new();
    let _ =
        writeln!(out, "family      = {} (eps {}, depth {depth}, count {DEMO_COUNT})", n.description(), fmt_tol(&eps));
    let v = pair_line(&mut out, &n, (Rat::zero(), Rat::zero()), &eps, depth)?;
    Ok(Report { text: out, code: verdict_code(&v) })
}

/// One of the `0/0` demonstrations.
#[derive(Debug, Clone)]
pub struct ZeroDivCase {
    pub label: &'static str,
    pub quotient: RatSeq,
    pub eps: Rat,
    pub depth: usize,
    pub verdict: CauchyVerdict,
}

/// `<1/n> / <1/n>`, `<2/n> / <1/n>` and `<(-1)^n/n> / <1/n>`, indexed so
/// that `n` starts at 1.
pub fn zerodiv_cases() -> Result<Vec<ZeroDivCase>, CliError> {
    let h = RatSeq::harmonic();
    let two_h = h.map("<2/n>", |t| t.add(t));
    let alt_h = RatSeq::alternating().combine(SeqOp::Mul, &h);
    let tight = Rat::pow10_neg(9);
    let mut cases = Vec::new();
    for (label, num, eps, depth) in [
        ("<1/n> / <1/n>", &h, tight.clone(), 64),
        ("<2/n> / <1/n>", &two_h, tight, 64),
        ("<(-1)^n/n> / <1/n>", &alt_h, Rat::new(1, 2).expect("positive denominator"), 10),
    ] {
        let quotient = raw_div(num, &h)?;
        let verdict = check_cauchy_to_depth(&quotient, &eps, depth)?;
        cases.push(ZeroDivCase { label, quotient, eps, depth, verdict });
    }
    Ok(cases)
}

pub fn demo_zerodiv() -> Result<Report, CliError> {
    let mut out = String::new();
    for c in zerodiv_cases()? {
        let terms: Vec<String> = c.quotient.prefix(6).iter().map(Rat::to_string).collect();
        let _ = writeln!(out, "{}", c.label);
        let _ = writeln!(out, "  terms     {}, ...", terms.join(", "));
        match &c.verdict {
            CauchyVerdict::HoldsToDepth { settle } => {
                let value = c.quotient.eval(c.depth);
                let _ = writeln!(
                    out,
                    "  cauchy    holds-to-depth (eps {}, depth {}, settled at index {settle})\n  value     {value}",
                    fmt_tol(&c.eps),
                    c.depth
                );
            }
            CauchyVerdict::Counterexample { m, n, gap } => {
                let _ = writeln!(
                    out,
                    "  cauchy    counterexample (eps {}, |q_{m} - q_{n}| = {gap})\n  value     none: not Cauchy",
                    fmt_tol(&c.eps)
                );
            }
        }
    }
    Ok(Report { text: out, code: 0 })
}
