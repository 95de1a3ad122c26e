//! Reals as rational Cauchy sequences carrying an explicit convergence modulus.
//!
//! A [`Real`] pairs a [`RatSeq`] with a modulus `ε ↦ N(ε)` promising
//! `|q_m - q_n| < ε` for all `m, n > N(ε)`. Every readout and comparison in
//! this module relies only on that promise, so results are sound whenever
//! the moduli are.

mod constants;

use std::fmt;
use std::sync::{Arc, Mutex};

pub use constants::{const_e, const_pi, const_sqrt};

use crate::error::{require_positive, Error, Result};
use crate::seq::RatSeq;
use crate::tower::{Int, Nat, Rat};

type ModulusFn = dyn Fn(&Rat) -> usize + Send + Sync;

/// Default number of indices scanned when verifying an apartness witness.
pub const APARTNESS_SCAN: usize = 64;

/// Consecutive zero denominators tolerated by [`raw_div`] before giving up.
pub const RAW_DIV_SCAN: usize = 1024;

/// Longest dyadic ε schedule tried by [`Real::lt_test`].
const MAX_SCHEDULE: usize = 128;

/// A rational Cauchy sequence with a convergence modulus.
#[derive(Clone)]
pub struct Real {
    seq: RatSeq,
    modulus: Arc<ModulusFn>,
}

/// Index `N` and tolerance `ε` backing a three-valued verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub eps: Rat,
    pub index: usize,
}

/// Result of a semi-decidable test at finite effort.
#[derive(Debug, Clone, PartialEq)]
pub enum Comparison3 {
    True(Witness),
    False(Witness),
    /// No verdict within the effort budget. Never a disproof.
    Unknown,
}

impl Comparison3 {
    pub fn is_true(&self) -> bool {
        matches!(self, Comparison3::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Comparison3::False(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Comparison3::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Comparison3::True(_) => "true-with-witness",
            Comparison3::False(_) => "false-with-witness",
            Comparison3::Unknown => "unknown-at-effort",
        }
    }
}

impl fmt::Display for Comparison3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison3::True(w) | Comparison3::False(w) => {
                write!(f, "{} (eps={}, index={})", self.label(), w.eps, w.index)
            }
            Comparison3::Unknown => f.write_str(self.label()),
        }
    }
}

/// Claim that `|y_n| >= delta` for every `n > index`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApartnessWitness {
    pub delta: Rat,
    pub index: usize,
}

impl Real {
    /// Trusts the caller that `modulus` is a valid, antitone convergence
    /// modulus for `seq`.
    pub fn new(seq: RatSeq, modulus: impl Fn(&Rat) -> usize + Send + Sync + 'static) -> Real {
        Real { seq, modulus: Arc::new(modulus) }
    }

    /// The constant sequence `<q>`, modulus identically 0.
    pub fn from_rat(q: Rat) -> Real {
        Real::new(RatSeq::constant(q), |_| 0)
    }

    pub fn zero() -> Real {
        Real::from_rat(Rat::zero())
    }

    pub fn one() -> Real {
        Real::from_rat(Rat::one())
    }

    /// `sum_{k=1..n} 2^-k`, converging to 1. Terms beyond `N` are within
    /// `2^-(N+1)` of each other.
    pub fn dyadic_series() -> Real {
        Real::new(RatSeq::dyadic_partial_sums(), |eps| eps.dyadic_exponent().saturating_sub(1) as usize)
    }

    pub fn seq(&self) -> &RatSeq {
        &self.seq
    }

    pub fn modulus(&self, eps: &Rat) -> usize {
        (self.modulus)(eps)
    }

    pub fn description(&self) -> &str {
        self.seq.description()
    }

    /// `q_{N(ε)+1}`. Readouts at `ε1` and `ε2` differ by at most `ε1 + ε2`.
    pub fn approx(&self, eps: &Rat) -> Result<Rat> {
        require_positive(eps)?;
        Ok(self.seq.eval(self.modulus(eps) + 1))
    }

    /// `B` with `|q_n| < B` for every `n`, from the terms up to `N(1) + 1`.
    fn bound(&self) -> Rat {
        let n1 = self.modulus(&Rat::one());
        (0..=n1 + 1).map(|n| self.seq.eval(n).abs()).fold(Rat::zero(), Rat::max).add(&Rat::one())
    }

    pub fn add(&self, other: &Real) -> Real {
        let (mx, my) = (self.modulus.clone(), other.modulus.clone());
        Real::new(self.seq.combine(crate::seq::SeqOp::Add, &other.seq), move |eps| {
            let half = eps.half();
            mx(&half).max(my(&half))
        })
    }

    pub fn neg(&self) -> Real {
        let m = self.modulus.clone();
        let desc = format!("-{}", self.seq.description());
        Real::new(self.seq.map(desc, Rat::negate), move |eps| m(eps))
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (mx, my) = (self.modulus.clone(), other.modulus.clone());
        Real::new(self.seq.combine(crate::seq::SeqOp::Sub, &other.seq), move |eps| {
            let half = eps.half();
            mx(&half).max(my(&half))
        })
    }

    /// Termwise product, modulus `max(N_x(ε/2B_y), N_y(ε/2B_x))`.
    pub fn mul(&self, other: &Real) -> Real {
        let (bx, by) = (self.bound(), other.bound());
        let (mx, my) = (self.modulus.clone(), other.modulus.clone());
        Real::new(self.seq.combine(crate::seq::SeqOp::Mul, &other.seq), move |eps| {
            let ex = eps.checked_div(&by.add(&by)).expect("bound >= 1");
            let ey = eps.checked_div(&bx.add(&bx)).expect("bound >= 1");
            mx(&ex).max(my(&ey))
        })
    }

    /// Termwise quotient after `w.index`, with the default verification scan.
    pub fn div(&self, y: &Real, w: &ApartnessWitness) -> Result<Real> {
        self.div_with_scan(y, w, APARTNESS_SCAN)
    }

    /// Verifies `w` against `y` (`N_y(δ/2) <= k` and `|y_n| >= δ` on
    /// `k+1..=k+scan`), which proves `|y_n| > δ/2` for all `n > k`. Indices
    /// `<= k` repeat the quotient at `k + 1`.
    pub fn div_with_scan(&self, y: &Real, w: &ApartnessWitness, scan: usize) -> Result<Real> {
        let k = w.index;
        if !w.delta.is_positive() {
            return Err(Error::InvalidApartness(format!("delta {} is not positive", w.delta)));
        }
        let half_delta = w.delta.half();
        let settle = y.modulus(&half_delta);
        if settle > k {
            return Err(Error::InvalidApartness(format!(
                "denominator only settles to within {half_delta} after index {settle}, past the witness index {k}"
            )));
        }
        for n in k + 1..=k + scan.max(1) {
            let t = y.seq.eval(n);
            if t.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if t.abs() < w.delta {
                return Err(Error::InvalidApartness(format!("|y_{n}| = {} < delta = {}", t.abs(), w.delta)));
            }
        }
        let bx = self.bound();
        let (xs, ys) = (self.seq.clone(), y.seq.clone());
        let (mx, my) = (self.modulus.clone(), y.modulus.clone());
        let desc = format!("({} / {})", xs.description(), ys.description());
        let quotient = RatSeq::new(desc, move |n| {
            let i = n.max(k + 1);
            xs.eval(i)
                .checked_div(&ys.eval(i))
                .expect("denominator modulus contract violated: zero term past the verified witness")
        });
        let d = half_delta;
        Ok(Real::new(quotient, move |eps| {
            let ex = eps.mul(&d).half();
            let ey = eps.mul(&d).mul(&d).checked_div(&bx.add(&bx)).expect("bound >= 1");
            k.max(mx(&ex)).max(my(&ey))
        }))
    }

    /// Searches `δ = 2t` for `t = 2^-1, 2^-2, …` (up to `budget` steps) such
    /// that the readout at `t` has magnitude `>= 3t`, which forces `|y_n| > 2t`
    /// past `N_y(t)`.
    pub fn find_apartness(&self, budget: usize) -> Option<ApartnessWitness> {
        (1..=budget.max(1)).find_map(|j| {
            let t = Rat::pow2_neg(u32::try_from(j).ok()?);
            let n = self.modulus(&t);
            let a = self.seq.eval(n + 1).abs();
            (a >= t.mul(&Rat::from_integer(3))).then(|| ApartnessWitness { delta: t.add(&t), index: n })
        })
    }

    /// Decides `|x - y| < ε` or `|x - y| >= ε` from readouts of the
    /// difference at `ε/2, ε/4, …` (`depth` refinements, at least one).
    /// Closeness only: exact equality is never claimed.
    pub fn eq_test(&self, other: &Real, eps: &Rat, depth: usize) -> Result<Comparison3> {
        require_positive(eps)?;
        let diff = self.sub(other);
        for r in 1..=depth.max(1) {
            let t = eps.mul(&Rat::pow2_neg(u32::try_from(r).unwrap_or(u32::MAX)));
            let n = diff.modulus(&t);
            let a = diff.seq.eval(n + 1).abs();
            let witness = Witness { eps: t.clone(), index: n + 1 };
            if a.add(&t) < *eps {
                return Ok(Comparison3::True(witness));
            }
            if a.sub(&t) >= *eps {
                return Ok(Comparison3::False(witness));
            }
        }
        Ok(Comparison3::Unknown)
    }

    /// Searches `ε = 2^-j` and `m = N_{y-x}(ε) <= depth` with
    /// `(y - x)_{m+1} >= 2ε`; then `x_n + ε < y_n` for every `n > m`.
    pub fn lt_test(&self, other: &Real, depth: usize) -> Comparison3 {
        let diff = other.sub(self);
        for j in 1..=depth.clamp(1, MAX_SCHEDULE) {
            let eps = Rat::pow2_neg(j as u32);
            let m = diff.modulus(&eps);
            if m > depth {
                break;
            }
            if diff.seq.eval(m + 1) >= eps.add(&eps) {
                return Comparison3::True(Witness { eps, index: m });
            }
        }
        Comparison3::Unknown
    }

    /// Square root of a real that is not provably negative. Term `n` is
    /// `floor(2^n sqrt(max(a_n, 0))) / 2^n` with `a_n` the readout at `4^-n`,
    /// so every term lies within `2^(1-n)` of the root.
    pub fn sqrt(&self) -> Result<Real> {
        if let Comparison3::True(w) = self.lt_test(&Real::zero(), 64) {
            return Err(Error::Domain(format!(
                "square root of a negative real (below -{} past index {})",
                w.eps, w.index
            )));
        }
        let x = self.clone();
        let desc = format!("sqrt({})", x.description());
        let seq = RatSeq::new(desc, move |n| {
            let a = x.approx(&Rat::pow2_neg(2 * n as u32)).expect("positive tolerance").max(Rat::zero());
            dyadic_sqrt_floor(&a, n as u32)
        });
        Ok(Real::new(seq.memoized(), |eps| eps.dyadic_exponent() as usize + 1))
    }
}

/// `floor(2^bits * sqrt(a)) / 2^bits` for `a >= 0`.
pub(crate) fn dyadic_sqrt_floor(a: &Rat, bits: u32) -> Rat {
    let scaled = a.mul(&Rat::from_int(Int::from_nat(Nat::one().shl(2 * u64::from(bits)))));
    let root = scaled.floor().magnitude().isqrt();
    Rat::from_int(Int::from_nat(root)).mul(&Rat::pow2_neg(bits))
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.seq.description())
    }
}

/// Termwise `x_n / y_n` over the indices where `y_n != 0`, with no modulus.
///
/// The value, if the result converges at all, depends on the chosen
/// representations; callers check convergence with
/// [`check_cauchy_to_depth`](crate::seq::check_cauchy_to_depth). If more than
/// [`RAW_DIV_SCAN`] consecutive zero denominators follow the last nonzero
/// one, the result holds its last value from then on.
pub fn raw_div(x: &RatSeq, y: &RatSeq) -> Result<RatSeq> {
    if !(0..RAW_DIV_SCAN).any(|n| !y.eval(n).is_zero()) {
        return Err(Error::EmptyQuotient(RAW_DIV_SCAN));
    }
    struct Indices {
        found: Vec<usize>,
        next: usize,
        exhausted: bool,
    }
    let state = Mutex::new(Indices { found: Vec::new(), next: 0, exhausted: false });
    let (xs, ys) = (x.clone(), y.clone());
    let desc = format!("raw({} / {})", x.description(), y.description());
    Ok(RatSeq::new(desc, move |j| {
        let mut st = state.lock().unwrap_or_else(|e| e.into_inner());
        while st.found.len() <= j && !st.exhausted {
            let start = st.next;
            match (start..start + RAW_DIV_SCAN).find(|&i| !ys.eval(i).is_zero()) {
                Some(i) => {
                    st.found.push(i);
                    st.next = i + 1;
                }
                None => st.exhausted = true,
            }
        }
        let i = st.found[j.min(st.found.len() - 1)];
        drop(st);
        xs.eval(i).checked_div(&ys.eval(i)).expect("index selected for a nonzero denominator")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{check_cauchy_to_depth, CauchyVerdict};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn within(a: &Rat, b: &Rat, tol: &Rat) -> bool {
        a.sub(b).abs() <= *tol
    }

    #[test]
    fn constants_from_rationals() {
        let z = Real::zero();
        assert!((0..10).all(|n| z.seq().eval(n).is_zero()));
        let seven_thirds = Real::from_rat(q(7, 3));
        assert_eq!(seven_thirds.seq().eval(99), q(7, 3));
        assert_eq!(seven_thirds.modulus(&q(1, 1_000_000)), 0);
    }

    #[test]
    fn constant_arithmetic() {
        let s = Real::from_rat(q(1, 2)).add(&Real::from_rat(q(1, 3)));
        assert_eq!(s.approx(&q(1, 100)).unwrap(), q(5, 6));
        let p = Real::from_rat(q(-2, 3)).mul(&Real::from_rat(q(9, 4)));
        assert_eq!(p.approx(&q(1, 100)).unwrap(), q(-3, 2));
    }

    #[test]
    fn approx_rejects_bad_tolerance() {
        assert!(matches!(Real::one().approx(&Rat::zero()), Err(Error::InvalidTolerance(_))));
        assert_eq!(Real::one().approx(&q(1, 7)).unwrap(), Rat::one());
    }

    #[test]
    fn dyadic_series_readout() {
        let x = Real::dyadic_series();
        let a = x.approx(&q(1, 100)).unwrap();
        assert!(within(&a, &Rat::one(), &q(1, 100)));
    }

    #[test]
    fn division_of_constants() {
        let w = ApartnessWitness { delta: Rat::from_integer(2), index: 0 };
        let r = Real::one().div(&Real::from_rat(Rat::from_integer(2)), &w).unwrap();
        assert_eq!(r.approx(&q(1, 10)).unwrap(), q(1, 2));
        assert_eq!(r.seq().eval(0), q(1, 2));
    }

    #[test]
    fn division_by_zero_real_is_rejected() {
        let w = ApartnessWitness { delta: q(1, 10), index: 3 };
        let err = Real::one().div(&Real::zero(), &w).unwrap_err();
        assert_eq!(err, Error::DivisionByZero);
        // A small but nonzero denominator that violates the claimed delta.
        let tiny = Real::from_rat(q(1, 1000));
        assert!(matches!(Real::one().div(&tiny, &w), Err(Error::InvalidApartness(_))));
        let bad = ApartnessWitness { delta: Rat::zero(), index: 0 };
        assert!(matches!(Real::one().div(&Real::one(), &bad), Err(Error::InvalidApartness(_))));
    }

    #[test]
    fn apartness_requires_settled_modulus() {
        // The dyadic series only settles within 1/4 after index 1.
        let w = ApartnessWitness { delta: q(1, 2), index: 0 };
        assert!(matches!(Real::one().div(&Real::dyadic_series(), &w), Err(Error::InvalidApartness(_))));
        let w = ApartnessWitness { delta: q(1, 2), index: 2 };
        let r = Real::one().div(&Real::dyadic_series(), &w).unwrap();
        assert!(within(&r.approx(&q(1, 1000)).unwrap(), &Rat::one(), &q(1, 1000)));
    }

    #[test]
    fn find_apartness_for_constants() {
        let w = Real::from_rat(q(-3, 2)).find_apartness(64).unwrap();
        assert!(Real::one().div(&Real::from_rat(q(-3, 2)), &w).is_ok());
        assert!(Real::zero().find_apartness(64).is_none());
        assert!(Real::one().sub(&Real::one()).find_apartness(64).is_none());
    }

    #[test]
    fn raw_div_examples() {
        let h = RatSeq::harmonic();
        let ones = raw_div(&h, &h).unwrap();
        assert!((0..50).all(|n| ones.eval(n) == Rat::one()));

        let two_h = h.map("2/(n+1)", |t| t.add(t));
        let twos = raw_div(&two_h, &h).unwrap();
        assert!((0..50).all(|n| twos.eval(n) == Rat::from_integer(2)));

        let alt = h.combine(crate::seq::SeqOp::Mul, &RatSeq::alternating());
        let osc = raw_div(&alt, &h).unwrap();
        assert_eq!(osc.prefix(4), RatSeq::alternating().prefix(4));
        let v = check_cauchy_to_depth(&osc, &q(1, 2), 10).unwrap();
        assert!(matches!(v, CauchyVerdict::Counterexample { .. }));
    }

    #[test]
    fn raw_div_skips_zero_denominators() {
        // y = 0, 1, 0, 2, 0, 3, ...
        let y = RatSeq::new("gappy", |n| if n % 2 == 0 { Rat::zero() } else { Rat::from_integer((n / 2 + 1) as i64) });
        let x = RatSeq::constant(Rat::from_integer(6));
        let r = raw_div(&x, &y).unwrap();
        assert_eq!(r.prefix(3), vec![Rat::from_integer(6), Rat::from_integer(3), Rat::from_integer(2)]);
    }

    #[test]
    fn raw_div_empty_and_exhausted() {
        let zero = RatSeq::constant(Rat::zero());
        assert_eq!(raw_div(&Real::one().seq().clone(), &zero).unwrap_err(), Error::EmptyQuotient(RAW_DIV_SCAN));
        // Nonzero only at index 2: the quotient holds that value forever.
        let y = RatSeq::new("spike", |n| if n == 2 { Rat::from_integer(4) } else { Rat::zero() });
        let r = raw_div(&RatSeq::constant(Rat::one()), &y).unwrap();
        assert_eq!(r.eval(0), q(1, 4));
        assert_eq!(r.eval(5), q(1, 4));
    }

    #[test]
    fn eq_test_examples() {
        let eps = Rat::pow10_neg(6);
        assert!(Real::dyadic_series().eq_test(&Real::one(), &eps, 64).unwrap().is_true());
        assert!(Real::zero().eq_test(&Real::one(), &q(1, 2), 8).unwrap().is_false());
        let pi = const_pi();
        for d in [0, 1, 5] {
            assert!(pi.eq_test(&pi, &q(1, 3), d).unwrap().is_true());
        }
        assert!(Real::one().eq_test(&Real::one(), &Rat::zero(), 1).is_err());
    }

    #[test]
    fn lt_test_examples() {
        match Real::zero().lt_test(&Real::one(), 10) {
            Comparison3::True(w) => assert!(w.eps <= q(1, 2)),
            other => panic!("expected a witness, got {other:?}"),
        }
        let x = Real::dyadic_series();
        for d in [1, 10, 100] {
            assert!(x.lt_test(&x, d).is_unknown());
            assert!(x.lt_test(&Real::one(), d).is_unknown());
        }
        assert!(Real::one().lt_test(&Real::zero(), 50).is_unknown());
    }

    #[test]
    fn lt_witness_holds_on_sampled_tail() {
        let x = const_sqrt(&Rat::from_integer(2)).unwrap();
        let y = Real::from_rat(q(3, 2));
        let Comparison3::True(w) = x.lt_test(&y, 200) else { panic!("sqrt 2 < 3/2 should be witnessed") };
        for n in w.index + 1..=w.index + 40 {
            assert!(x.seq().eval(n).add(&w.eps) < y.seq().eval(n));
        }
    }

    #[test]
    fn sqrt_of_reals() {
        let r = const_pi().sqrt().unwrap();
        let a = r.approx(&Rat::pow10_neg(6)).unwrap();
        // sqrt(pi) = 1.7724538509...
        assert!(within(&a, &q(17_724_538_509, 10_000_000_000), &Rat::pow10_neg(6)));
        let two = Real::from_rat(Rat::from_integer(4)).sqrt().unwrap();
        assert!(within(&two.approx(&Rat::pow10_neg(9)).unwrap(), &Rat::from_integer(2), &Rat::pow10_neg(9)));
        assert!(matches!(Real::from_rat(q(-1, 4)).sqrt(), Err(Error::Domain(_))));
        assert!(Real::zero().sqrt().unwrap().approx(&q(1, 100)).unwrap() <= q(1, 100));
    }
}
