//! Built-in constructions: pi, e and square roots of rationals.

use std::sync::{Arc, Mutex};

use super::Real;
use crate::error::{Error, Result};
use crate::seq::RatSeq;
use crate::tower::{Int, Nat, Rat};

/// `1 / ((2k+1) z^(2k+1))` for integer `z`.
fn arctan_term(z: u64, k: usize) -> Rat {
    let power = Nat::from(z).pow(2 * k as u32 + 1);
    let den = &power * &Nat::from(2 * k as u64 + 1);
    Rat::from_pair(Int::one(), Int::from_nat(den)).expect("positive denominator")
}

/// Bound on `|pi - S_n|`: `16 a_{n+1} + 4 b_{n+1}` with `a`, `b` the
/// magnitudes of the arctan(1/5) and arctan(1/239) terms.
fn pi_tail(n: usize) -> Rat {
    arctan_term(5, n + 1).mul(&Rat::from_integer(16)).add(&arctan_term(239, n + 1).mul(&Rat::from_integer(4)))
}

/// Machin's formula `pi = 16 arctan(1/5) - 4 arctan(1/239)`, term `n` being
/// the partial sums through `k = n` of both alternating series.
///
/// Each alternating series with decreasing terms has remainder below its
/// first omitted term, so `|pi - S_n| <= T(n) = pi_tail(n)`. For `m, n > N`
/// the terms differ by at most `T(m) + T(n) < 2 T(N)`, hence the modulus is
/// the least `N` with `2 T(N) < ε`.
pub fn const_pi() -> Real {
    let seq = RatSeq::partial_sums("<pi: Machin partial sums>", 0, |k| {
        let t = arctan_term(5, k).mul(&Rat::from_integer(16)).sub(&arctan_term(239, k).mul(&Rat::from_integer(4)));
        if k % 2 == 0 {
            t
        } else {
            t.negate()
        }
    });
    Real::new(seq, |eps| (0..).find(|&n| pi_tail(n).mul(&Rat::from_integer(2)) < *eps).expect("tail tends to zero"))
}

/// `S_n = sum_{k=0..n} 1/k!`.
///
/// The tail after `n` is below `2/(n+1)!`, so terms past `N` differ by less
/// than `2/(N+2)!`; the modulus is the least such `N` with that `<= ε`.
pub fn const_e() -> Real {
    let seq = RatSeq::partial_sums("<e: sum 1/k!>", 0, |k| {
        let fact = (1..=k as u64).fold(Nat::one(), |acc, i| &acc * &Nat::from(i));
        Rat::from_pair(Int::one(), Int::from_nat(fact)).expect("positive denominator")
    });
    Real::new(seq, |eps| {
        let mut fact = Nat::from(2); // (N+2)! at N = 0
        let mut n = 0usize;
        loop {
            let bound = Rat::from_pair(Int::from(2), Int::from_nat(fact.clone())).expect("positive denominator");
            if bound <= *eps {
                return n;
            }
            n += 1;
            fact = &fact * &Nat::from(n as u64 + 2);
        }
    })
}

/// Newton iterates `x_{k+1} = (x_k + q/x_k) / 2` from `x_0 = max(1, q)`,
/// each rounded up to a multiple of `2^-(2^k + 64)` so term size stays
/// linear in the precision reached.
///
/// Every iterate satisfies `q/x_k <= sqrt(q) <= x_k`. Rounding up keeps the
/// upper bound, and since `x_k` already lies on the next (finer) grid the
/// iterates still decrease. So once `x_k - q/x_k < ε` every later iterate is within `ε` of
/// `x_k`. Term `n` of the sequence is iterate `floor(log2(n+1))`; iterate
/// sizes double per step, which keeps term size linear in the index. The
/// modulus for a needed iterate `k` is the last index before `2^k - 1`.
pub fn const_sqrt(q: &Rat) -> Result<Real> {
    if q.is_negative() {
        return Err(Error::Domain(format!("square root of negative rational {q}")));
    }
    let q = q.normalize();
    let iterates = Arc::new(Mutex::new(vec![Rat::one().max(q.clone())]));

    let iterate = {
        let iterates = iterates.clone();
        let q = q.clone();
        move |k: usize| -> Rat {
            let mut xs = iterates.lock().unwrap_or_else(|e| e.into_inner());
            while xs.len() <= k {
                let x = xs.last().expect("seeded").clone();
                let next = x.add(&q.checked_div(&x).expect("iterates stay positive")).half();
                let bits = grid_bits(xs.len());
                xs.push(ceil_dyadic(&next, bits));
            }
            xs[k].clone()
        }
    };
    let iterate = Arc::new(iterate);

    let at_index = iterate.clone();
    let seq = RatSeq::new(format!("<sqrt({q}): Newton>"), move |n| at_index(newton_step(n)));
    let q_mod = q.clone();
    Ok(Real::new(seq, move |eps| {
        let k = (0..)
            .find(|&k| {
                let x = iterate(k);
                x.sub(&q_mod.checked_div(&x).expect("iterates stay positive")) < *eps
            })
            .expect("Newton gap tends to zero");
        (1usize << k).saturating_sub(2)
    }))
}

fn grid_bits(k: usize) -> u64 {
    (1u64 << k.min(40)) + 64
}

/// Least multiple of `2^-bits` that is `>= x`.
fn ceil_dyadic(x: &Rat, bits: u64) -> Rat {
    let scale = Rat::from_int(Int::from_nat(Nat::one().shl(bits)));
    let up = x.negate().mul(&scale).floor().negate();
    Rat::from_int(up).checked_div(&scale).expect("nonzero scale")
}

/// `floor(log2(n + 1))`
fn newton_step(n: usize) -> usize {
    (usize::BITS - 1 - (n + 1).leading_zeros()) as usize
}
