//! Closed collections of reals represented as the limit points of a rational
//! sequence.
//!
//! A [`SuperClass`] never exposes its carrier as a membership set: queries
//! ask whether a point is approached by the carrier at a given resolution.
//! Every builder here produces a closed set; there is no constructor for an
//! open or half-open interval, and no counting operation.
//!
//! Verdicts are three-valued. "True" means at least `count` carrier terms
//! within `ε` of the candidate were found among the first `depth + 1`.
//! "False" is only issued when the builder carries an enclosure of its limit
//! set that the candidate provably misses; black-box carriers get "unknown".

mod pair;
mod shape;

use std::fmt;

pub use pair::{family_endpoints, graph_step, is_pair_limit_point, FamilyKind, PairSeq, Rect};
pub(crate) use shape::Target;
pub use shape::{Bound, Segment};

use crate::calculus::Poly;
use crate::error::{require_positive, Error, Result};
use crate::real::{Comparison3, Real, Witness};
use crate::seq::RatSeq;
use crate::tower::{Int, Nat, Rat};

/// Default number of hits required to confirm a limit point.
pub const DEFAULT_COUNT: usize = 3;

/// A point of the extended line.
#[derive(Debug, Clone)]
pub enum ExtendedPoint {
    Finite(Real),
    PosInf,
    NegInf,
}

impl ExtendedPoint {
    pub fn rat(q: Rat) -> ExtendedPoint {
        ExtendedPoint::Finite(Real::from_rat(q))
    }

    /// Resolve to a hit target at resolution `eps`: finite points are read
    /// out at `eps/2`.
    pub(crate) fn target(&self, eps: &Rat) -> Result<Target> {
        Ok(match self {
            ExtendedPoint::Finite(x) => Target::Near(x.approx(&eps.half())?),
            ExtendedPoint::PosInf => Target::Above,
            ExtendedPoint::NegInf => Target::Below,
        })
    }
}

impl From<Rat> for ExtendedPoint {
    fn from(q: Rat) -> Self {
        ExtendedPoint::rat(q)
    }
}

/// The limit-point set of a rational sequence.
#[derive(Clone)]
pub struct SuperClass {
    carrier: RatSeq,
    description: String,
    /// Closed segments whose union contains every limit point and every
    /// carrier term. `None` for black-box carriers.
    enclosure: Option<Vec<Segment>>,
    /// Every carrier term is itself a limit point.
    terms_are_limits: bool,
}

impl SuperClass {
    /// A black-box carrier: membership queries can confirm but never refute.
    pub fn from_carrier(carrier: RatSeq, description: impl Into<String>) -> SuperClass {
        SuperClass { carrier, description: description.into(), enclosure: None, terms_are_limits: false }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn enclosure(&self) -> Option<&[Segment]> {
        self.enclosure.as_deref()
    }

    /// The closed interval `[a, b]`.
    ///
    /// Level `L = 0, 1, 2, …` of the carrier sweeps a window with spacing
    /// `(b-a)/2^L` for finite ends. An infinite end makes the window grow
    /// as `2^L` (`[-2^L, 2^L]` for the whole line, `[a, a + 2^L]` or
    /// `[b - 2^L, b]` for half-lines) with spacing `2^-L`; those levels emit
    /// their two window ends first.
    pub fn interval(a: Bound, b: Bound) -> Result<SuperClass> {
        let invalid = || Error::InvalidInterval(a.to_string(), b.to_string());
        if a == Bound::PosInf || b == Bound::NegInf {
            return Err(invalid());
        }
        if let (Bound::Finite(x), Bound::Finite(y)) = (&a, &b) {
            if x > y {
                return Err(invalid());
            }
        }
        let sweep = Sweep::new(a.clone(), b.clone());
        let desc = format!("[{a}, {b}]");
        let carrier = RatSeq::new(format!("sweep{desc}"), move |n| sweep.term(n));
        Ok(SuperClass { carrier, description: desc, enclosure: Some(vec![Segment::new(a, b)]), terms_are_limits: true })
    }

    pub fn closed(a: Rat, b: Rat) -> Result<SuperClass> {
        SuperClass::interval(Bound::Finite(a), Bound::Finite(b))
    }

    pub fn real_line() -> SuperClass {
        SuperClass::interval(Bound::NegInf, Bound::PosInf).expect("valid ends")
    }

    /// The single point `q`.
    pub fn point(q: Rat) -> SuperClass {
        let desc = format!("{{{q}}}");
        SuperClass {
            carrier: RatSeq::constant(q.clone()),
            description: desc,
            enclosure: Some(vec![Segment::point(q)]),
            terms_are_limits: true,
        }
    }

    /// Finitely many points, visited cyclically. Panics on an empty list.
    pub fn points(qs: Vec<Rat>) -> SuperClass {
        assert!(!qs.is_empty(), "a point set needs at least one point");
        let desc = format!("{{{}}}", qs.iter().map(Rat::to_string).collect::<Vec<_>>().join(", "));
        let enclosure = qs.iter().cloned().map(Segment::point).collect();
        let carrier = RatSeq::new(desc.clone(), move |n| qs[n % qs.len()].clone());
        SuperClass { carrier, description: desc, enclosure: Some(enclosure), terms_are_limits: true }
    }

    /// Interleaves the carriers; the limit set is the union.
    pub fn union(&self, other: &SuperClass) -> SuperClass {
        let enclosure = match (&self.enclosure, &other.enclosure) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        SuperClass {
            carrier: self.carrier.interleave(&other.carrier),
            description: format!("{} u {}", self.description, other.description),
            enclosure,
            terms_are_limits: self.terms_are_limits && other.terms_are_limits,
        }
    }

    /// The image of the class under `f`, carrier mapped termwise. Stands for
    /// `f(x)` with `x` ranging over the class.
    pub fn map_range(&self, f: &Poly) -> SuperClass {
        let enclosure = self.enclosure.as_ref().map(|segs| segs.iter().map(|s| image_enclosure(f, s)).collect());
        let g = f.clone();
        SuperClass {
            carrier: self.carrier.map(format!("({f})({})", self.carrier.description()), move |t| g.eval(t)),
            description: format!("({f})({})", self.description),
            enclosure,
            terms_are_limits: self.terms_are_limits,
        }
    }
}

impl fmt::Debug for SuperClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperClass({})", self.description)
    }
}

/// Segment containing `f(s)`; unbounded segments map to the whole line
/// unless `f` is constant.
fn image_enclosure(f: &Poly, s: &Segment) -> Segment {
    if f.degree().unwrap_or(0) == 0 {
        return Segment::point(f.eval(&Rat::zero()));
    }
    match (&s.lo, &s.hi) {
        (Bound::Finite(a), Bound::Finite(b)) => {
            let (lo, hi) = f.range_enclosure(a, b);
            Segment::new(Bound::Finite(lo), Bound::Finite(hi))
        }
        _ => Segment::line(),
    }
}

/// Index layout of an interval carrier.
struct Sweep {
    lo: Bound,
    hi: Bound,
}

impl Sweep {
    fn new(lo: Bound, hi: Bound) -> Sweep {
        Sweep { lo, hi }
    }

    fn bounded(&self) -> bool {
        matches!((&self.lo, &self.hi), (Bound::Finite(_), Bound::Finite(_)))
    }

    /// Number of points emitted at level `level`.
    fn level_size(&self, level: u32) -> u128 {
        let pow = |e: u32| if e >= 127 { u128::MAX } else { 1u128 << e };
        match (&self.lo, &self.hi) {
            (Bound::Finite(_), Bound::Finite(_)) => pow(level).saturating_add(1),
            (Bound::NegInf, Bound::PosInf) => pow(2 * level + 1).saturating_add(1),
            _ => pow(2 * level).saturating_add(1),
        }
    }

    /// Window `[lo, hi]` at a level, with the spacing of its grid.
    fn window(&self, level: u32) -> (Rat, Rat, Rat) {
        let width = Rat::from_int(Int::from_nat(Nat::one().shl(u64::from(level))));
        let step = Rat::pow2_neg(level);
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => (a.clone(), b.clone(), b.sub(a).mul(&step)),
            (Bound::NegInf, Bound::PosInf) => (width.negate(), width, step),
            (Bound::Finite(a), _) => (a.clone(), a.add(&width), step),
            (_, Bound::Finite(b)) => (b.sub(&width), b.clone(), step),
            _ => unreachable!("validated interval ends"),
        }
    }

    fn term(&self, n: usize) -> Rat {
        let mut rest = n as u128;
        let mut level = 0u32;
        loop {
            let size = self.level_size(level);
            if rest < size {
                break;
            }
            rest -= size;
            level += 1;
        }
        let (lo, hi, step) = self.window(level);
        let k = if self.bounded() {
            rest
        } else {
            // window ends first, then the interior left to right
            match rest {
                0 => return lo,
                1 => return hi,
                r => r - 1,
            }
        };
        let k = Rat::from_int(Int::from_nat(Nat::from(u64::try_from(k).expect("level offset fits in u64"))));
        lo.add(&step.mul(&k))
    }
}

fn far_bound(eps: &Rat) -> Rat {
    eps.recip().expect("positive tolerance")
}

/// Whether `p` is a limit point of `s` at resolution `eps`: at least
/// `count` (minimum 2) carrier terms among indices `0..=depth` within `eps`
/// of the readout of `p` at `eps/2`, or beyond `±1/eps` for infinite `p`.
pub fn is_limit_point(s: &SuperClass, p: &ExtendedPoint, eps: &Rat, count: usize, depth: usize) -> Result<Comparison3> {
    require_positive(eps)?;
    let count = count.max(2);
    let target = p.target(eps)?;
    if let Some(enc) = &s.enclosure {
        if !enc.iter().any(|seg| seg.admits(&target, eps)) {
            return Ok(Comparison3::False(Witness { eps: eps.clone(), index: 0 }));
        }
    }
    let far = far_bound(eps);
    let mut hits = 0;
    for n in 0..=depth {
        if target.hit(&s.carrier.eval(n), eps, &far) {
            hits += 1;
            if hits == count {
                return Ok(Comparison3::True(Witness { eps: eps.clone(), index: n }));
            }
        }
    }
    Ok(Comparison3::Unknown)
}

/// Compares limit sets at resolution `eps`: every carrier term of either
/// class with index in `depth/2..=depth` must have a term of the other class
/// among indices `0..=depth` within `eps` (terms beyond `±1/eps` match any
/// same-signed term beyond `±1/eps`).
///
/// An unmatched term refutes equality when its class has
/// limit-point-valued terms and it lies outside the other class's
/// enclosure.
pub fn superclass_eq(s1: &SuperClass, s2: &SuperClass, eps: &Rat, depth: usize) -> Result<Comparison3> {
    require_positive(eps)?;
    let settle = depth / 2;
    let far = far_bound(eps);
    let t1 = s1.carrier.prefix(depth + 1);
    let t2 = s2.carrier.prefix(depth + 1);
    let pool1 = Pool::new(&t1);
    let pool2 = Pool::new(&t2);

    let mut unmatched = Vec::new();
    for (terms, pool, this, other) in [(&t1, &pool2, s1, s2), (&t2, &pool1, s2, s1)] {
        if let Some((index, t)) = terms.iter().enumerate().skip(settle).find(|(_, t)| !pool.matches(t, eps, &far)) {
            unmatched.push((index, t.clone(), this, other));
        }
    }
    if unmatched.is_empty() {
        return Ok(Comparison3::True(Witness { eps: eps.clone(), index: settle }));
    }
    for (index, t, this, other) in unmatched {
        if let (true, Some(enc)) = (this.terms_are_limits, &other.enclosure) {
            if enc.iter().all(|seg| !seg.distance(&t).is_zero()) {
                return Ok(Comparison3::False(Witness { eps: eps.clone(), index }));
            }
        }
    }
    Ok(Comparison3::Unknown)
}

/// Sorted terms for nearest-neighbour matching.
struct Pool {
    sorted: Vec<Rat>,
}

impl Pool {
    fn new(terms: &[Rat]) -> Pool {
        let mut sorted = terms.to_vec();
        sorted.sort();
        Pool { sorted }
    }

    fn matches(&self, t: &Rat, eps: &Rat, far: &Rat) -> bool {
        let (Some(min), Some(max)) = (self.sorted.first(), self.sorted.last()) else {
            return false;
        };
        if t > far && max > far {
            return true;
        }
        if t < &far.negate() && min < &far.negate() {
            return true;
        }
        let i = self.sorted.partition_point(|x| x < t);
        let near = |j: usize| self.sorted.get(j).is_some_and(|x| x.sub(t).abs() <= *eps);
        near(i) || (i > 0 && near(i - 1))
    }
}
