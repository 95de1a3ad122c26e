use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;

/// Arbitrary-precision natural number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::ZERO)
    }

    pub fn one() -> Self {
        Nat(BigUint::from(1u8))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == BigUint::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.0 == BigUint::from(1u8)
    }

    /// `self - other`, or `None` when `other > self`.
    pub fn checked_sub(&self, other: &Nat) -> Option<Nat> {
        if other.0 > self.0 {
            None
        } else {
            Some(Nat(&self.0 - &other.0))
        }
    }

    /// Euclidean quotient and remainder. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Nat) -> (Nat, Nat) {
        (Nat(&self.0 / &divisor.0), Nat(&self.0 % &divisor.0))
    }

    /// Greatest common divisor by Euclid's algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Nat) -> Nat {
        let mut a = self.0.clone();
        let mut b = other.0.clone();
        while b != BigUint::ZERO {
            let r = &a % &b;
            a = b;
            b = r;
        }
        Nat(a)
    }

    pub fn pow(&self, exp: u32) -> Nat {
        Nat(self.0.pow(exp))
    }

    /// Largest `r` with `r * r <= self`, by Newton iteration on integers.
    pub fn isqrt(&self) -> Nat {
        if self.is_zero() {
            return Nat::zero();
        }
        // Seed above the root: 2^ceil(bits/2).
        let mut x = BigUint::from(1u8) << self.0.bits().div_ceil(2);
        loop {
            let y = (&x + &self.0 / &x) >> 1u32;
            if y >= x {
                return Nat(x);
            }
            x = y;
        }
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn shl(&self, bits: u64) -> Nat {
        Nat(&self.0 << bits)
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl Add for &Nat {
    type Output = Nat;
    fn add(self, rhs: &Nat) -> Nat {
        Nat(&self.0 + &rhs.0)
    }
}

impl Mul for &Nat {
    type Output = Nat;
    fn mul(self, rhs: &Nat) -> Nat {
        Nat(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
