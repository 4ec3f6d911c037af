//! Exact abelianization routes checked against each other and against
//! closed forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use prishchepov::params::{PrishchepovParams, Sign, TypeFParams};
use prishchepov::zpoly::modular::{det_mod_p, is_unit_fast, order_multimodular, CyclicField};
use prishchepov::zpoly::{
    ab_order, abelian_invariants, circulant_determinant, circulant_from_poly, circulant_is_unit,
    is_unit_in_quotient, representer_polynomial, resultant_order, resultant_signed, smith_normal_form, AbOrder,
    IntPoly,
};

fn params() -> impl Strategy<Value = TypeFParams> {
    (2u64..=18).prop_flat_map(|n| {
        (1..=2 * n + 2, Just(n), 1..=n, 1..=2 * n + 2, 1..=n, prop::bool::ANY).prop_map(|(r, n, k, s, q, plus)| {
            TypeFParams::new(r, n, k, s, q, if plus { Sign::Plus } else { Sign::Minus }).unwrap()
        })
    })
}

fn small_poly() -> impl Strategy<Value = (Vec<i64>, usize)> {
    (1usize..=14).prop_flat_map(|n| (prop::collection::vec(-4i64..=4, n), Just(n)))
}

/// Exact determinant of a dense matrix by cofactor expansion, for tiny sizes.
fn cofactor_det(n: usize, a: &[i64]) -> BigInt {
    if n == 1 {
        return BigInt::from(a[0]);
    }
    let mut total = BigInt::zero();
    for col in 0..n {
        if a[col] == 0 {
            continue;
        }
        let minor: Vec<i64> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| a[r * n + c])
            .collect();
        let term = BigInt::from(a[col]) * cofactor_det(n - 1, &minor);
        total += if col % 2 == 0 { term } else { -term };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn determinant_resultant_smith_agree(p in params()) {
        let f = representer_polynomial(&p);
        let n = p.n as usize;
        let c = circulant_from_poly(&f, n);
        let det = circulant_determinant(&c);
        prop_assert_eq!(&det, &resultant_signed(&f, n));
        prop_assert_eq!(det.abs(), resultant_order(&f, n));
        let snf = smith_normal_form(&c);
        match snf.order() {
            AbOrder::Finite(o) => prop_assert_eq!(o, det.abs()),
            AbOrder::Infinite => prop_assert!(det.is_zero()),
        }
        for w in snf.torsion.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(order_multimodular(&f, n), Some(det.abs()));
        prop_assert_eq!(is_unit_fast(&f, n), det.abs().is_one());
        prop_assert_eq!(circulant_is_unit(&c), det.abs().is_one());
        let unit = is_unit_in_quotient(&f, n);
        prop_assert_eq!(unit.unit, det.abs().is_one());
        if let Some(cert) = unit.certificate {
            prop_assert!(cert.verify(&f, n));
        }
    }

    #[test]
    fn coefficient_sum_is_exponent_sum(p in params()) {
        let f = representer_polynomial(&p);
        prop_assert_eq!(f.coefficient_sum(), BigInt::from(p.exponent_sum()));
        // evaluating at t = 1 is the trivial character, so the exponent sum
        // divides the order
        if let AbOrder::Finite(o) = ab_order(&p) {
            prop_assert!((o % BigInt::from(p.exponent_sum()).abs()).is_zero());
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion((row, n) in small_poly()) {
        prop_assume!(n <= 7);
        let f = IntPoly::from_i64s(&row);
        let c = circulant_from_poly(&f, n);
        let dense: Vec<i64> = (0..n * n).map(|x| row[(x % n + n - x / n) % n]).collect();
        prop_assert_eq!(circulant_determinant(&c), cofactor_det(n, &dense));
    }

    #[test]
    fn prime_field_routes_agree((row, n) in small_poly()) {
        prop_assume!(n >= 2);
        let f = IntPoly::from_i64s(&row);
        let exact = circulant_determinant(&circulant_from_poly(&f, n));
        let field = CyclicField::new(n);
        let p = BigInt::from(field.p);
        let reduced = ((&exact % &p) + &p) % &p;
        prop_assert_eq!(BigInt::from(field.product(field.eval_all(&row))), reduced.clone());
        let dense: Vec<i64> = (0..n * n).map(|x| row[(x % n + n - x / n) % n]).collect();
        prop_assert_eq!(BigInt::from(det_mod_p(n, &dense, field.p)), reduced);
    }

    #[test]
    fn swapping_and_q_reduction_preserve_invariants(p in params()) {
        prop_assume!(p.epsilon == Sign::Minus);
        let pp = p.as_prishchepov().unwrap();
        let inv = abelian_invariants(&p);
        prop_assert_eq!(&abelian_invariants(&prishchepov::params::swap_r_s(&pp).params()), &inv);
        if let Ok(red) = prishchepov::params::reduce_q_to_one(&pp) {
            prop_assert_eq!(&abelian_invariants(&red.params()), &inv);
        }
    }
}

#[test]
fn two_term_circulants_have_closed_form_orders() {
    // circ(r, -s, 0, ..., 0) of size m has determinant r^m - s^m up to sign
    for m in 2..=12usize {
        for r in 1..=6i64 {
            for s in 1..=6i64 {
                let mut row = vec![0i64; m];
                row[0] = r;
                row[1] = -s;
                let det = circulant_determinant(&circulant_from_poly(&IntPoly::from_i64s(&row), m));
                let want = BigInt::from(r).pow(m as u32) - BigInt::from(s).pow(m as u32);
                assert_eq!(det.abs(), want.abs(), "m={m} r={r} s={s}");
            }
        }
    }
}

#[test]
fn known_orders() {
    let order = |r, n, k, s, q| ab_order(&PrishchepovParams::new(r, n, k, s, q).unwrap().params());
    // Fibonacci groups F(2, n) = P(2, n, 3, 1, 1) have abelianization of
    // order L_n - 1 - (-1)^n with L_n the Lucas numbers
    let lucas = |n: u32| -> i64 {
        let (mut a, mut b) = (2i64, 1i64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    };
    for n in 2..=20u32 {
        let want = lucas(n) - 1 - if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(order(2, n as u64, 3, 1, 1), AbOrder::Finite(BigInt::from(want)), "n={n}");
    }
    assert_eq!(order(2, 3, 3, 1, 1), AbOrder::Finite(BigInt::from(4)));
    assert_eq!(order(2, 5, 2, 1, 2), AbOrder::Finite(BigInt::one()));
    assert_eq!(order(3, 3, 2, 3, 1), AbOrder::Infinite);
}
