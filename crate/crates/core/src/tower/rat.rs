use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::int::Int;
use super::nat::Nat;
use crate::error::{Error, Result};

/// A rational as an ordered pair of integers `(a, b)` with `b > 0`,
/// denoting `a / b`.
///
/// Arithmetic returns reduced representatives. Equality and order are the
/// cross-multiplication relations `a*d = b*c` and `a*d < b*c`.
#[derive(Clone)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    /// The pair `(a, b)`. Rejects `b <= 0` rather than flipping signs.
    pub fn from_pair(num: Int, den: Int) -> Result<Rat> {
        if !den.is_positive() {
            return Err(Error::InvalidRational(den.to_string()));
        }
        Ok(Rat { num, den })
    }

    fn from_canonical(num: Int, den: Int) -> Rat {
        debug_assert!(den.is_positive());
        Rat { num, den }
    }

    pub fn new(num: i64, den: i64) -> Result<Rat> {
        Ok(Rat::from_pair(Int::from(num), Int::from(den))?.normalize())
    }

    /// `n / 1`
    pub fn from_integer(n: i64) -> Rat {
        Rat::from_canonical(Int::from(n), Int::one())
    }

    pub fn from_int(n: Int) -> Rat {
        Rat::from_canonical(n.normalize(), Int::one())
    }

    pub fn zero() -> Rat {
        Rat::from_canonical(Int::zero(), Int::one())
    }

    pub fn one() -> Rat {
        Rat::from_canonical(Int::one(), Int::one())
    }

    /// `2^-k`
    pub fn pow2_neg(k: u32) -> Rat {
        Rat::from_canonical(Int::one(), Int::from_nat(Nat::one().shl(u64::from(k))))
    }

    /// `10^-k`
    pub fn pow10_neg(k: u32) -> Rat {
        Rat::from_canonical(Int::one(), Int::from_nat(Nat::from(10).pow(k)))
    }

    pub fn numerator(&self) -> &Int {
        &self.num
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    pub fn is_canonical(&self) -> bool {
        self.num.is_canonical() && self.den.is_canonical() && self.num.magnitude().gcd(&self.den.magnitude()).is_one()
    }

    /// Lowest terms with canonical integer components. Idempotent.
    pub fn normalize(&self) -> Rat {
        let num = self.num.normalize();
        let den = self.den.magnitude();
        let mag = num.magnitude();
        if mag.is_zero() {
            return Rat::zero();
        }
        let g = mag.gcd(&den);
        let (n, _) = mag.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        Rat::from_canonical(Int::with_sign(num.is_negative(), n), Int::from_nat(d))
    }

    /// `(a, b) + (c, d) = (a*d + b*c, b*d)`
    pub fn add(&self, other: &Rat) -> Rat {
        let num = &(&self.num * &other.den) + &(&self.den * &other.num);
        Rat::from_canonical(num, &self.den * &other.den).normalize()
    }

    /// `-(a, b) = (-a, b)`
    pub fn negate(&self) -> Rat {
        Rat::from_canonical(self.num.negate(), self.den.clone()).normalize()
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        self.add(&other.negate())
    }

    /// `(a, b) * (c, d) = (a*c, b*d)`
    pub fn mul(&self, other: &Rat) -> Rat {
        Rat::from_canonical(&self.num * &other.num, &self.den * &other.den).normalize()
    }

    /// `(a, b) / (c, d) = (a*d, b*c)`, defined only for `c != 0`.
    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = &self.num * &other.den;
        let den = &self.den * &other.num;
        // b*c carries the sign of c; move it to the numerator.
        let (num, den) = if den.is_negative() { (num.negate(), den.negate()) } else { (num, den) };
        Ok(Rat::from_canonical(num, den).normalize())
    }

    pub fn recip(&self) -> Result<Rat> {
        Rat::one().checked_div(self)
    }

    /// `(a, b) < (c, d)` iff `a*d < b*c`.
    pub fn compare(&self, other: &Rat) -> Ordering {
        (&self.num * &other.den).compare(&(&self.den * &other.num))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            self.negate()
        } else {
            self.normalize()
        }
    }

    pub fn half(&self) -> Rat {
        self.mul(&Rat::pow2_neg(1))
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Rat> {
        let base = if exp < 0 { self.recip()? } else { self.normalize() };
        let e = u32::try_from(exp.unsigned_abs()).map_err(|_| Error::Domain(format!("exponent {exp} too large")))?;
        let num = base.num.magnitude().pow(e);
        let den = base.den.magnitude().pow(e);
        let negative = base.is_negative() && e % 2 == 1;
        Ok(Rat::from_canonical(Int::with_sign(negative, num), Int::from_nat(den)))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> Int {
        let r = self.normalize();
        let (q, rem) = r.num.magnitude().div_rem(&r.den.magnitude());
        if r.is_negative() {
            let q = if rem.is_zero() { q } else { &q + &Nat::one() };
            Int::with_sign(true, q)
        } else {
            Int::from_nat(q)
        }
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits. Exact when the value terminates within that many digits.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let r = self.normalize();
        let scaled = &r.num.magnitude() * &Nat::from(10).pow(digits);
        let (q, _) = scaled.div_rem(&r.den.magnitude());
        let mut s = q.to_string();
        if digits > 0 {
            let width = digits as usize + 1;
            if s.len() < width {
                s = format!("{}{}", "0".repeat(width - s.len()), s);
            }
            s.insert(s.len() - digits as usize, '.');
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        if r.is_negative() && s.chars().any(|c| c != '0' && c != '.') {
            s.insert(0, '-');
        }
        s
    }

    /// Whether the value has a finite decimal expansion.
    pub fn is_decimal(&self) -> bool {
        let mut d = self.normalize().den.magnitude();
        for p in [2u64, 5] {
            let p = Nat::from(p);
            loop {
                let (q, r) = d.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                d = q;
            }
        }
        d.is_one()
    }

    /// Smallest `j >= 0` with `2^-j <= self`. Requires `self > 0`.
    pub fn dyadic_exponent(&self) -> u32 {
        debug_assert!(self.is_positive());
        let r = self.normalize();
        if r >= Rat::one() {
            return 0;
        }
        // 2^-j <= n/d  iff  d <= n * 2^j
        let n = r.num.magnitude();
        let d = r.den.magnitude();
        let mut j = d.bits().saturating_sub(n.bits()).saturating_sub(1);
        while n.shl(j) < d {
            j += 1;
        }
        u32::try_from(j).expect("tolerance exponent fits in u32")
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat::add(self, rhs)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat::sub(self, rhs)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat::mul(self, rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.negate()
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_integer(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.normalize();
        if r.den.magnitude().is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

fn parse_digits(s: &str) -> Option<Nat> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let ten = Nat::from(10);
    Some(s.bytes().fold(Nat::zero(), |acc, b| &(&acc * &ten) + &Nat::from(u64::from(b - b'0'))))
}

/// Literal forms: `a`, `a/b`, `d.ddd`, each optionally signed and, for the
/// integer and decimal forms, followed by an exponent `e[+-]k`. Decimals
/// convert exactly to a power-of-ten denominator.
impl FromStr for Rat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Rat> {
        let bad = || Error::ParseRational(text.to_string());
        let s = text.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if let Some((a, b)) = body.split_once('/') {
            let num = parse_digits(a).ok_or_else(bad)?;
            let den = parse_digits(b).ok_or_else(bad)?;
            let r = Rat::from_pair(Int::with_sign(negative, num), Int::from_nat(den))?;
            return Ok(r.normalize());
        }
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = body[i + 1..].parse().map_err(|_| bad())?;
                (&body[..i], e)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num = parse_digits(&digits).ok_or_else(bad)?;
        let scale = u32::try_from(frac_part.len()).map_err(|_| bad())?;
        let den = Nat::from(10).pow(scale);
        let base = Rat::from_canonical(Int::with_sign(negative, num), Int::from_nat(den)).normalize();
        let factor = Rat::from_integer(10).pow(exponent).map_err(|_| bad())?;
        Ok(base.mul(&factor))
    }
}
