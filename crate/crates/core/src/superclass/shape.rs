use std::fmt;

use crate::tower::Rat;

/// An interval end: a rational or one of the two infinities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl From<Rat> for Bound {
    fn from(q: Rat) -> Self {
        Bound::Finite(q)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("+inf"),
            Bound::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// A closed segment `[lo, hi]`, possibly unbounded on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub lo: Bound,
    pub hi: Bound,
}

/// What a query compares against: a rational centre or an infinite end.
#[derive(Debug, Clone)]
pub(crate) enum Target {
    Near(Rat),
    Above,
    Below,
}

impl Segment {
    pub fn new(lo: Bound, hi: Bound) -> Segment {
        Segment { lo, hi }
    }

    pub fn point(q: Rat) -> Segment {
        Segment { lo: Bound::Finite(q.clone()), hi: Bound::Finite(q) }
    }

    pub fn line() -> Segment {
        Segment { lo: Bound::NegInf, hi: Bound::PosInf }
    }

    /// Distance from `c` to the segment; zero inside.
    pub fn distance(&self, c: &Rat) -> Rat {
        if let Bound::Finite(lo) = &self.lo {
            if c < lo {
                return lo.sub(c);
            }
        }
        if let Bound::Finite(hi) = &self.hi {
            if c > hi {
                return c.sub(hi);
            }
        }
        Rat::zero()
    }

    /// Whether the segment could hold a limit point matching `target` at
    /// resolution `eps`.
    pub(crate) fn admits(&self, target: &Target, eps: &Rat) -> bool {
        match target {
            Target::Near(c) => self.distance(c) <= *eps,
            Target::Above => self.hi == Bound::PosInf,
            Target::Below => self.lo == Bound::NegInf,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Target {
    /// Does the carrier term `t` count as a hit?
    pub(crate) fn hit(&self, t: &Rat, eps: &Rat, far: &Rat) -> bool {
        match self {
            Target::Near(c) => t.sub(c).abs() <= *eps,
            Target::Above => t > far,
            Target::Below => t < &far.negate(),
        }
    }
}
