//! Derivatives as quotients of vanishing sequences, and midpoint integrals.

use creal::calculus::{derivative_at, integrate, symbolic_derivative, Poly};
use creal::{Rat, RatSeq};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-10i64..=10, 1..=6).prop_map(|c| Poly::from_integers(&c))
}

fn point() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 5i64..=10).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// `(f(x + h) - f(x)) / h` with `h` cancelled symbolically:
/// `sum_k c_k sum_{j>=1} C(k, j) x^(k-j) h^(j-1)`.
fn cancelled_quotient(f: &Poly, x: &Rat, h: &Rat) -> Rat {
    let mut total = Rat::zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        let k = k as u32;
        for j in 1..=k {
            let term = Rat::from_integer(binomial(k, j))
                .mul(&x.pow(i64::from(k - j)).unwrap())
                .mul(&h.pow(i64::from(j - 1)).unwrap());
            total = total.add(&c.mul(&term));
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_matches_power_rule(f in poly(), x in point()) {
        let r = derivative_at(&f, &x, &RatSeq::geometric(Rat::new(1, 2).unwrap()), &Rat::pow10_neg(6), 40).unwrap();
        let exact = symbolic_derivative(&f).eval(&x);
        prop_assert!(r.estimate.sub(&exact).abs() <= Rat::pow10_neg(5), "f = {}, x = {}", f, x);
    }

    #[test]
    fn derivative_independent_of_step_sequence(f in poly(), x in point()) {
        let eps = Rat::pow10_neg(6);
        let halves = derivative_at(&f, &x, &RatSeq::geometric(Rat::new(1, 2).unwrap()), &eps, 40).unwrap();
        let thirds = derivative_at(&f, &x, &RatSeq::geometric(Rat::new(1, 3).unwrap()), &eps, 40).unwrap();
        prop_assert!(halves.estimate.sub(&thirds.estimate).abs() <= Rat::new(2, 100_000).unwrap());
    }

    #[test]
    fn cancellation_gives_identical_terms(f in poly(), x in point(), n in 0usize..24) {
        let dx = RatSeq::geometric(Rat::new(1, 2).unwrap());
        let r = derivative_at(&f, &x, &dx, &Rat::pow10_neg(3), 4).unwrap();
        let term = r.quotient.eval(n);
        let cancelled = cancelled_quotient(&f, &x, &dx.eval(n));
        prop_assert_eq!(format!("{term:?}"), format!("{cancelled:?}"));
    }

    #[test]
    fn integrals_are_additive(f in poly(), a in point(), w1 in 0i64..=10, w2 in 0i64..=10) {
        // keep |x| <= 2 so the midpoint error h^2 (f'(c) - f'(a)) / 24 stays far below the tolerance
        let a = a.mul(&Rat::new(1, 8).unwrap());
        let b = a.add(&Rat::new(w1, 20).unwrap());
        let c = b.add(&Rat::new(w2, 20).unwrap());
        let i = |lo: &Rat, hi: &Rat| integrate(&f, lo, hi, 12).unwrap().eval(12);
        let gap = i(&a, &b).add(&i(&b, &c)).sub(&i(&a, &c)).abs();
        prop_assert!(gap <= Rat::pow10_neg(4), "gap {}", gap);
    }
}

#[test]
fn symbolic_examples() {
    assert_eq!(symbolic_derivative(&Poly::from_integers(&[0, 0, 1])), Poly::from_integers(&[0, 2]));
    assert!(symbolic_derivative(&Poly::constant(Rat::from_integer(7))).is_zero());
    let f = Poly::from_integers(&[0, 2, 0, 1]);
    let df = symbolic_derivative(&f);
    assert_eq!(df, Poly::from_integers(&[2, 0, 3]));
    // cross-check against a central difference with h = 10^-4
    let h = Rat::pow10_neg(4);
    for x in [-2i64, 0, 1, 5] {
        let x = Rat::from_integer(x);
        let central = f.eval(&x.add(&h)).sub(&f.eval(&x.sub(&h))).checked_div(&h.add(&h)).unwrap();
        assert!(central.sub(&df.eval(&x)).abs() <= Rat::pow10_neg(6));
    }
}

#[test]
fn worked_example_x_squared_at_three() {
    let f = Poly::from_integers(&[0, 0, 1]);
    let dx = RatSeq::geometric(Rat::new(1, 2).unwrap());
    let r = derivative_at(&f, &Rat::from_integer(3), &dx, &Rat::pow10_neg(6), 30).unwrap();
    assert!(r.cauchy.holds());
    assert!(r.estimate.sub(&Rat::from_integer(6)).abs() <= Rat::pow10_neg(6));
    // Δy/Δx = 2x + Δx exactly
    for n in 0..10 {
        assert_eq!(r.quotient.eval(n), Rat::from_integer(6).add(&dx.eval(n)));
    }
}

#[test]
fn midpoint_integrals() {
    let (zero, one) = (Rat::zero(), Rat::one());
    let c = integrate(&Poly::constant(one.clone()), &zero, &one, 8).unwrap();
    assert!((0..9).all(|n| c.eval(n) == one));
    let lin = integrate(&Poly::x(), &zero, &one, 8).unwrap();
    assert!((0..9).all(|n| lin.eval(n) == Rat::new(1, 2).unwrap()));
    let sq = integrate(&Poly::from_integers(&[0, 0, 1]), &zero, &one, 12).unwrap();
    assert!(sq.eval(12).sub(&Rat::new(1, 3).unwrap()).abs() <= Rat::pow10_neg(4));
    assert!(integrate(&Poly::x(), &one, &zero, 4).is_err());
}
