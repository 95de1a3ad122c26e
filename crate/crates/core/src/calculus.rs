//! Derivatives as quotients of two zero sequences and integrals as
//! dyadically refined midpoint sums, for rational-coefficient polynomials.

use std::fmt;

use crate::error::{require_positive, Error, Result};
use crate::real::raw_div;
use crate::seq::{check_cauchy_to_depth, CauchyVerdict, RatSeq};
use crate::tower::{Int, Nat, Rat};

/// Polynomial with rational coefficients in ascending degree order.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rat::zero();
        Poly::new(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero).add(other.coeffs.get(i).unwrap_or(&zero))).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(Rat::negate).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    /// Power rule, coefficient by coefficient.
    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul(&Rat::from_integer(k as i64))).collect())
    }

    /// An interval `[lo, hi]` containing `f([a, b])`, by summing monomial
    /// ranges (even powers of an interval straddling 0 start at 0).
    pub fn range_enclosure(&self, a: &Rat, b: &Rat) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (pl, ph) = power_range(a, b, k as i64);
            let (tl, th) = if c.is_negative() { (ph.mul(c), pl.mul(c)) } else { (pl.mul(c), ph.mul(c)) };
            lo = lo.add(&tl);
            hi = hi.add(&th);
        }
        (lo, hi)
    }
}

/// Range of `t^k` over `t in [a, b]`.
fn power_range(a: &Rat, b: &Rat, k: i64) -> (Rat, Rat) {
    let pa = a.pow(k).expect("non-negative exponent");
    let pb = b.pow(k).expect("non-negative exponent");
    if k % 2 == 1 {
        (pa, pb)
    } else if a.is_negative() && b.is_positive() {
        (Rat::zero(), pa.max(pb))
    } else {
        (pa.clone().min(pb.clone()), pa.max(pb))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == Rat::one();
            match k {
                0 => write!(f, "{mag}")?,
                _ if unit => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Power-rule derivative; the exact oracle for [`derivative_at`].
pub fn symbolic_derivative(f: &Poly) -> Poly {
    f.derivative()
}

/// The difference-quotient sequence, its Cauchy scan, and the term at the
/// scan depth.
#[derive(Debug, Clone)]
pub struct DerivativeResult {
    pub quotient: RatSeq,
    pub cauchy: CauchyVerdict,
    pub estimate: Rat,
}

/// `dy/dx` at `x` as the raw quotient of `Δy_n = f(x + dx_n) - f(x)` by
/// `dx_n`, skipping indices where `dx_n = 0`. The verdict is reported, not
/// enforced: a non-Cauchy quotient still yields an estimate.
pub fn derivative_at(f: &Poly, x: &Rat, dx: &RatSeq, eps: &Rat, depth: usize) -> Result<DerivativeResult> {
    require_positive(eps)?;
    let (f_owned, x_owned) = (f.clone(), x.clone());
    let fx = f.eval(x);
    let dy = dx.map(format!("f({x} + dx) - f({x})"), move |h| f_owned.eval(&x_owned.add(h)).sub(&fx));
    let quotient = raw_div(&dy, dx)?.memoized();
    let cauchy = check_cauchy_to_depth(&quotient, eps, depth)?;
    let estimate = quotient.eval(depth.max(1));
    Ok(DerivativeResult { quotient, cauchy, estimate })
}

/// Midpoint sums of `f` over `[a, b]` split into `2^n` equal cells, for
/// `n = 0..=depth`; terms past `depth` repeat the last sum. Cell width goes
/// to 0 while the cell count grows without bound.
pub fn integrate(f: &Poly, a: &Rat, b: &Rat, depth: usize) -> Result<RatSeq> {
    if a > b {
        return Err(Error::InvalidInterval(a.to_string(), b.to_string()));
    }
    let (f, a, b) = (f.clone(), a.clone(), b.clone());
    let desc = format!("midpoint sums of {f} over [{a}, {b}]");
    let seq = RatSeq::new(desc, move |n| midpoint_sum(&f, &a, &b, n.min(depth) as u32));
    Ok(seq.memoized())
}

/// `w * sum_i f(x_i)` over the `2^level` cell midpoints `x_i` of `[a, b]`.
///
/// With `a = p/q` and `b - a = r/s`, the midpoints are `N_i / D` for
/// `D = 2^(level+1) q s` and `N_i = 2^(level+1) p s + (2i + 1) r q`, so the
/// sum is `sum_k c_k (sum_i N_i^k) / D^k`: integer power sums and one
/// rational operation per coefficient.
fn midpoint_sum(f: &Poly, a: &Rat, b: &Rat, level: u32) -> Rat {
    let (a, span) = (a.normalize(), b.sub(a));
    let (p, q) = (a.numerator(), a.denominator());
    let (r, s) = (span.numerator(), span.denominator());
    let two_m = Int::from_nat(Nat::one().shl(u64::from(level) + 1));
    let den = two_m.mul(q).mul(s);
    let step = Int::from(2).mul(r).mul(q);
    let mut point = two_m.mul(p).mul(s).add(&r.mul(q));

    let degree = f.coeffs().len();
    let mut power_sums = vec![Int::zero(); degree];
    for _ in 0..1u64 << level {
        let mut power = Int::one();
        for sum in power_sums.iter_mut() {
            *sum = sum.add(&power);
            power = power.mul(&point);
        }
        point = point.add(&step);
    }

    let mut total = Rat::zero();
    let mut den_power = Int::one();
    for (c, sum) in f.coeffs().iter().zip(&power_sums) {
        let mean = Rat::from_pair(sum.clone(), den_power.clone()).expect("positive denominator");
        total = total.add(&c.mul(&mean));
        den_power = den_power.mul(&den);
    }
    total.mul(&span).mul(&Rat::pow2_neg(level))
}
