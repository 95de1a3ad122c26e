//! Deterministic rational sequences indexed from 0.

use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use crate::error::{require_positive, Result};
use crate::tower::Rat;

type Generator = dyn Fn(usize) -> Rat + Send + Sync;

/// A total, pure mapping from indices to rationals, with a provenance string.
#[derive(Clone)]
pub struct RatSeq {
    generator: Arc<Generator>,
    description: Arc<str>,
}

/// Termwise combinators for [`RatSeq::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqOp {
    Add,
    Sub,
    Mul,
    /// `s1(0), s2(0), s1(1), s2(1), ...`
    Interleave,
}

impl RatSeq {
    /// Wraps a generator. It must return the same rational for the same
    /// index every time.
    pub fn new(description: impl Into<String>, generator: impl Fn(usize) -> Rat + Send + Sync + 'static) -> Self {
        RatSeq { generator: Arc::new(generator), description: description.into().into() }
    }

    pub fn eval(&self, n: usize) -> Rat {
        (self.generator)(n)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Terms `0..len`.
    pub fn prefix(&self, len: usize) -> Vec<Rat> {
        (0..len).map(|n| self.eval(n)).collect()
    }

    pub fn constant(q: Rat) -> Self {
        let desc = format!("<{q}>");
        RatSeq::new(desc, move |_| q.clone())
    }

    /// `1/(n+1)`
    pub fn harmonic() -> Self {
        RatSeq::new("<1/(n+1)>", |n| Rat::from_integer(1).checked_div(&index_rat(n + 1)).expect("n+1 > 0"))
    }

    /// `ratio^n`
    pub fn geometric(ratio: Rat) -> Self {
        let desc = format!("<({ratio})^n>");
        RatSeq::new(desc, move |n| ratio.pow(n as i64).expect("non-negative exponent"))
    }

    /// `(-1)^n`
    pub fn alternating() -> Self {
        RatSeq::new("<(-1)^n>", |n| Rat::from_integer(if n % 2 == 0 { 1 } else { -1 }))
    }

    /// `sum_{k=1..n} 2^-k = 1 - 2^-n`, summed term by term.
    pub fn dyadic_partial_sums() -> Self {
        RatSeq::partial_sums("<sum_{k=1..n} 2^-k>", 1, |k| Rat::pow2_neg(k as u32))
    }

    /// `S(n) = sum_{k=first..=n} term(k)`, the empty sum when `n < first`.
    /// Prefix sums are cached.
    pub fn partial_sums(
        description: impl Into<String>,
        first: usize,
        term: impl Fn(usize) -> Rat + Send + Sync + 'static,
    ) -> Self {
        let cache: Mutex<Vec<Rat>> = Mutex::new(Vec::new());
        RatSeq::new(description, move |n| {
            if n < first {
                return Rat::zero();
            }
            // sums[i] = S(first + i)
            let mut sums = cache.lock().unwrap_or_else(|e| e.into_inner());
            let want = n - first;
            while sums.len() <= want {
                let k = first + sums.len();
                let prev = sums.last().cloned().unwrap_or_else(Rat::zero);
                sums.push(prev.add(&term(k)));
            }
            sums[want].clone()
        })
    }

    pub fn map(&self, description: impl Into<String>, f: impl Fn(&Rat) -> Rat + Send + Sync + 'static) -> Self {
        let inner = self.clone();
        RatSeq::new(description, move |n| f(&inner.eval(n)))
    }

    pub fn combine(&self, op: SeqOp, other: &RatSeq) -> RatSeq {
        let (a, b) = (self.clone(), other.clone());
        match op {
            SeqOp::Add => {
                RatSeq::new(format!("({} + {})", a.description, b.description), move |n| a.eval(n).add(&b.eval(n)))
            }
            SeqOp::Sub => {
                RatSeq::new(format!("({} - {})", a.description, b.description), move |n| a.eval(n).sub(&b.eval(n)))
            }
            SeqOp::Mul => {
                RatSeq::new(format!("({} * {})", a.description, b.description), move |n| a.eval(n).mul(&b.eval(n)))
            }
            SeqOp::Interleave => RatSeq::new(format!("interleave({}, {})", a.description, b.description), move |n| {
                if n % 2 == 0 {
                    a.eval(n / 2)
                } else {
                    b.eval(n / 2)
                }
            }),
        }
    }

    pub fn interleave(&self, other: &RatSeq) -> RatSeq {
        self.combine(SeqOp::Interleave, other)
    }

    /// Caches a contiguous prefix of evaluated terms. Indices far past the
    /// cached prefix are evaluated directly.
    pub fn memoized(&self) -> RatSeq {
        const REACH: usize = 4096;
        let inner = self.clone();
        let cache: RwLock<Vec<Rat>> = RwLock::new(Vec::new());
        RatSeq::new(self.description.to_string(), move |n| {
            if let Some(q) = cache.read().unwrap_or_else(|e| e.into_inner()).get(n) {
                return q.clone();
            }
            let mut terms = cache.write().unwrap_or_else(|e| e.into_inner());
            if n >= terms.len() + REACH {
                return inner.eval(n);
            }
            while terms.len() <= n {
                let next = inner.eval(terms.len());
                terms.push(next);
            }
            terms[n].clone()
        })
    }
}

impl fmt::Debug for RatSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatSeq({})", self.description)
    }
}

pub(crate) fn index_rat(n: usize) -> Rat {
    Rat::from_integer(i64::try_from(n).expect("index fits in i64"))
}

/// Outcome of a finite-depth Cauchy scan.
#[derive(Debug, Clone, PartialEq)]
pub enum CauchyVerdict {
    /// Every term after `settle` up to the depth is within ε of term `settle`.
    /// Not a proof that the sequence is Cauchy.
    HoldsToDepth { settle: usize },
    /// `|q_m - q_n| = gap >= ε` with `m < n <= depth`.
    Counterexample { m: usize, n: usize, gap: Rat },
}

impl CauchyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CauchyVerdict::HoldsToDepth { .. })
    }
}

/// Looks for an index `m < depth` such that `|q_m - q_n| < ε` for every
/// `m < n <= depth`. If no such `m` exists, reports the first violation
/// against `q_0`.
pub fn check_cauchy_to_depth(s: &RatSeq, eps: &Rat, depth: usize) -> Result<CauchyVerdict> {
    require_positive(eps)?;
    let depth = depth.max(1);
    let terms = s.prefix(depth + 1);
    let mut first_violation = None;
    for m in 0..depth {
        let violation = (m + 1..=depth).find_map(|n| {
            let gap = terms[m].sub(&terms[n]).abs();
            (gap >= *eps).then_some((n, gap))
        });
        match violation {
            None => return Ok(CauchyVerdict::HoldsToDepth { settle: m }),
            Some((n, gap)) if first_violation.is_none() => {
                first_violation = Some(CauchyVerdict::Counterexample { m, n, gap })
            }
            Some(_) => {}
        }
    }
    Ok(first_violation.expect("depth >= 1 leaves at least one candidate"))
}
