use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::nat::Nat;

/// An integer as an ordered pair of naturals `(m, n)` denoting `m - n`.
///
/// Any pair is a valid value. Results of arithmetic are returned in
/// canonical form (one component zero). Equality and order follow the pair
/// axioms: `(m, n) = (i, j)` iff `m + j = n + i`, and `(m, n) < (i, j)` iff
/// `m + j < n + i`. The components are never compared structurally.
#[derive(Clone, Default)]
pub struct Int {
    pos: Nat,
    neg: Nat,
}

impl Int {
    /// The pair `(m, n)`, stored as given.
    pub fn from_pair(m: Nat, n: Nat) -> Self {
        Int { pos: m, neg: n }
    }

    pub fn zero() -> Self {
        Int::from_pair(Nat::zero(), Nat::zero())
    }

    pub fn one() -> Self {
        Int::from_pair(Nat::one(), Nat::zero())
    }

    pub fn from_nat(n: Nat) -> Self {
        Int::from_pair(n, Nat::zero())
    }

    pub fn pair(&self) -> (&Nat, &Nat) {
        (&self.pos, &self.neg)
    }

    pub fn is_canonical(&self) -> bool {
        self.pos.is_zero() || self.neg.is_zero()
    }

    /// The representative with one component zero.
    pub fn normalize(&self) -> Int {
        match self.pos.checked_sub(&self.neg) {
            Some(d) => Int::from_pair(d, Nat::zero()),
            None => Int::from_pair(Nat::zero(), self.neg.checked_sub(&self.pos).unwrap_or_default()),
        }
    }

    /// `(m, n) + (i, j) = (m + i, n + j)`
    pub fn add(&self, other: &Int) -> Int {
        Int::from_pair(&self.pos + &other.pos, &self.neg + &other.neg).normalize()
    }

    /// `-(m, n) = (n, m)`
    pub fn negate(&self) -> Int {
        Int::from_pair(self.neg.clone(), self.pos.clone()).normalize()
    }

    /// `(m, n) * (i, j) = (mi + nj, mj + ni)`
    pub fn mul(&self, other: &Int) -> Int {
        let (m, n) = (&self.pos, &self.neg);
        let (i, j) = (&other.pos, &other.neg);
        Int::from_pair(&(m * i) + &(n * j), &(m * j) + &(n * i)).normalize()
    }

    /// Order by `m + j` against `n + i`.
    pub fn compare(&self, other: &Int) -> Ordering {
        let lhs = &self.pos + &other.neg;
        let rhs = &self.neg + &other.pos;
        lhs.cmp(&rhs)
    }

    pub fn is_zero(&self) -> bool {
        self.pos == self.neg
    }

    pub fn is_positive(&self) -> bool {
        self.pos > self.neg
    }

    pub fn is_negative(&self) -> bool {
        self.pos < self.neg
    }

    /// `|m - n|` as a natural.
    pub fn magnitude(&self) -> Nat {
        match self.pos.checked_sub(&self.neg) {
            Some(d) => d,
            None => self.neg.checked_sub(&self.pos).unwrap_or_default(),
        }
    }

    /// Sign-preserving construction from a magnitude.
    pub fn with_sign(negative: bool, magnitude: Nat) -> Int {
        if negative {
            Int::from_pair(Nat::zero(), magnitude)
        } else {
            Int::from_pair(magnitude, Nat::zero())
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::with_sign(v < 0, Nat::from(v.unsigned_abs()))
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        Int::add(self, rhs)
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        Int::add(self, &rhs.negate())
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        Int::mul(self, rhs)
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        self.negate()
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "-{}", self.magnitude())
        } else {
            write!(f, "{}", self.magnitude())
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.pos, self.neg)
    }
}
