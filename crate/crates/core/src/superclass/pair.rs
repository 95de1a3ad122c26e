//! Sequences of rational pairs: plane points, function graphs and families of
//! interval endpoints.

use std::fmt;
use std::sync::Arc;

use super::{far_bound, Bound, ExtendedPoint, Segment, SuperClass};
use crate::error::{require_positive, Result};
use crate::real::{Comparison3, Witness};
use crate::tower::Rat;

type PairFn = dyn Fn(usize) -> (Rat, Rat) + Send + Sync;

/// A closed box `x-segment × y-segment`.
pub type Rect = (Segment, Segment);

/// A deterministic, total sequence of rational pairs.
#[derive(Clone)]
pub struct PairSeq {
    generator: Arc<PairFn>,
    description: String,
    /// Boxes covering every term and every pair-limit-point, when known.
    enclosure: Option<Vec<Rect>>,
}

impl PairSeq {
    pub fn new(description: impl Into<String>, f: impl Fn(usize) -> (Rat, Rat) + Send + Sync + 'static) -> PairSeq {
        PairSeq { generator: Arc::new(f), description: description.into(), enclosure: None }
    }

    pub fn constant(x: Rat, y: Rat) -> PairSeq {
        let desc = format!("<({x}, {y})>");
        let boxes = vec![(Segment::point(x.clone()), Segment::point(y.clone()))];
        PairSeq::new(desc, move |_| (x.clone(), y.clone())).enclosed(boxes)
    }

    fn enclosed(mut self, boxes: Vec<Rect>) -> PairSeq {
        self.enclosure = Some(boxes);
        self
    }

    pub fn eval(&self, n: usize) -> (Rat, Rat) {
        (self.generator)(n)
    }

    pub fn prefix(&self, len: usize) -> Vec<(Rat, Rat)> {
        (0..len).map(|n| self.eval(n)).collect()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn enclosure(&self) -> Option<&[Rect]> {
        self.enclosure.as_deref()
    }
}

impl fmt::Debug for PairSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairSeq({})", self.description)
    }
}

/// Interval families with a degenerate or unbounded limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `[0, 1/2], [1/2, 3/4], [3/4, 7/8], …` — endpoints approach `(1, 1)`.
    Zeno,
    /// `[-2^-k, 2^-k]` — endpoints approach `(0, 0)`.
    Nested,
    /// `[-k, k]` — endpoints run off to `(-inf, +inf)`.
    Segments,
}

/// Ruler schedule: writing `n + 1 = 2^a (2b + 1)`, term `n` shows member
/// `b`. Every member recurs infinitely often and member `b` first appears
/// at index `2b`.
fn ruler(n: usize) -> usize {
    let m = n + 1;
    (m >> m.trailing_zeros()) >> 1
}

/// Endpoint pairs of an interval family, each member repeated infinitely
/// often so that it is itself a pair-limit-point.
pub fn family_endpoints(kind: FamilyKind) -> PairSeq {
    match kind {
        FamilyKind::Zeno => PairSeq::new("<(1 - 2^-k, 1 - 2^-(k+1))>", |n| {
            let k = ruler(n) as u32;
            (Rat::one().sub(&Rat::pow2_neg(k)), Rat::one().sub(&Rat::pow2_neg(k + 1)))
        }),
        FamilyKind::Nested => PairSeq::new("<(-2^-k, 2^-k)>", |n| {
            let w = Rat::pow2_neg(ruler(n) as u32);
            (w.negate(), w)
        }),
        FamilyKind::Segments => PairSeq::new("<(-k, k)>", |n| {
            let k = Rat::from_integer(ruler(n) as i64);
            (k.negate(), k)
        }),
    }
}

/// The graph of the step function `y = 1` for `x < 0`, `y = 2` for `x > 0`,
/// with the vertical segment `y ∈ [1, 2]` at `x = 0`.
///
/// Terms cycle through the three pieces: a sweep of `(-inf, 0]` at height
/// 1, a sweep of `[0, +inf)` at height 2, and a sweep of `[1, 2]` on the
/// axis.
pub fn graph_step() -> PairSeq {
    let left = SuperClass::interval(Bound::NegInf, Bound::Finite(Rat::zero())).expect("valid ends").carrier;
    let right = SuperClass::interval(Bound::Finite(Rat::zero()), Bound::PosInf).expect("valid ends").carrier;
    let riser = SuperClass::closed(Rat::one(), Rat::from_integer(2)).expect("valid ends").carrier;
    let (one, two) = (Rat::one(), Rat::from_integer(2));
    let boxes = vec![
        (Segment::new(Bound::NegInf, Bound::Finite(Rat::zero())), Segment::point(one.clone())),
        (Segment::new(Bound::Finite(Rat::zero()), Bound::PosInf), Segment::point(two.clone())),
        (Segment::point(Rat::zero()), Segment::new(Bound::Finite(one.clone()), Bound::Finite(two.clone()))),
    ];
    PairSeq::new("<step graph>", move |n| match n % 3 {
        0 => (left.eval(n / 3), one.clone()),
        1 => (right.eval(n / 3), two.clone()),
        _ => (Rat::zero(), riser.eval(n / 3)),
    })
    .enclosed(boxes)
}

/// Joint form of [`is_limit_point`](super::is_limit_point): a hit needs both
/// coordinates to match at once.
pub fn is_pair_limit_point(
    ps: &PairSeq,
    p: (&ExtendedPoint, &ExtendedPoint),
    eps: &Rat,
    count: usize,
    depth: usize,
) -> Result<Comparison3> {
    require_positive(eps)?;
    let count = count.max(2);
    let tx = p.0.target(eps)?;
    let ty = p.1.target(eps)?;
    if let Some(boxes) = &ps.enclosure {
        if !boxes.iter().any(|(bx, by)| bx.admits(&tx, eps) && by.admits(&ty, eps)) {
            return Ok(Comparison3::False(Witness { eps: eps.clone(), index: 0 }));
        }
    }
    let far = far_bound(eps);
    let mut hits = 0;
    for n in 0..=depth {
        let (x, y) = ps.eval(n);
        if tx.hit(&x, eps, &far) && ty.hit(&y, eps, &far) {
            hits += 1;
            if hits == count {
                return Ok(Comparison3::True(Witness { eps: eps.clone(), index: n }));
            }
        }
    }
    Ok(Comparison3::Unknown)
}
