//! Coset enumeration against abelianization orders and across strategy
//! seeds.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use prishchepov::cosetenum::{
    certify_trivial, presentation_from_params, CosetTable, FinitePresentation, todd_coxeter, EnumerationOptions, EnumerationStatus,
    TrivialityCertificate,
};
use prishchepov::params::{PrishchepovParams, Sign, TypeFParams};
use prishchepov::zpoly::{ab_order, AbOrder};

fn opts(max_cosets: usize, seed: u64) -> EnumerationOptions {
    EnumerationOptions {
        max_cosets,
        seed,
        lookahead: false,
    }
}

/// Every relator, read from every coset, returns to it.
fn relators_close(pres: &FinitePresentation, table: &CosetTable, m: usize) -> bool {
    (0..m).all(|c| {
        pres.relators.iter().all(|w| {
            let end = w.iter().try_fold(c, |cur, &(g, e)| table.action(cur, 2 * g + usize::from(e < 0)));
            end == Some(c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn closed_tables_are_consistent(
        n in 2u64..=6, r in 1u64..=4, s in 1u64..=4, k in 1u64..=6, q in 1u64..=6, plus in prop::bool::ANY, seed in 0u64..4
    ) {
        let p = TypeFParams::new(r, n, k, s, q, if plus { Sign::Plus } else { Sign::Minus }).unwrap();
        let table = todd_coxeter(&presentation_from_params(&p), &opts(20_000, seed));
        if let EnumerationStatus::Complete(m) = table.status {
            // a finite group has finite abelianization dividing its order
            match ab_order(&p) {
                AbOrder::Finite(o) => prop_assert!((BigInt::from(m) % o).is_zero(), "{} order {}", p, m),
                AbOrder::Infinite => prop_assert!(false, "{} closed at {} with infinite abelianization", p, m),
            }
            prop_assert!(relators_close(&presentation_from_params(&p), &table, m), "{}", p);
            // other seeds reach the same order when they close
            let other = todd_coxeter(&presentation_from_params(&p), &opts(20_000, seed + 7)).status;
            if let EnumerationStatus::Complete(m2) = other {
                prop_assert_eq!(m, m2);
            }
        }
    }
}

#[test]
fn sieradski_groups_close_quickly() {
    for (n, order) in [(3u64, 8usize), (4, 24), (5, 120)] {
        let p = PrishchepovParams::new(2, n, 2, 1, 2).unwrap();
        let start = std::time::Instant::now();
        let status = todd_coxeter(&presentation_from_params(&p), &EnumerationOptions::default()).status;
        assert_eq!(status, EnumerationStatus::Complete(order));
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }
}

#[test]
fn certificates() {
    let cert = |s: &str| {
        let p: TypeFParams = s.parse().unwrap();
        certify_trivial(&p.as_prishchepov().unwrap(), &EnumerationOptions::default())
    };
    assert!(matches!(cert("P(3,5,1,2,1)"), TrivialityCertificate::Trivial { .. }));
    assert!(matches!(cert("P(3,5,3,2,1)"), TrivialityCertificate::Trivial { .. }));
    assert!(matches!(cert("P(2,3,3,1,1)"), TrivialityCertificate::Nontrivial { .. }));
    assert!(matches!(cert("P(2,5,2,1,2)"), TrivialityCertificate::Nontrivial { .. }));
}

#[test]
fn budget_exhaustion_is_reported() {
    // F(2, 6) is infinite
    let p = PrishchepovParams::new(2, 6, 3, 1, 1).unwrap();
    let status = todd_coxeter(&presentation_from_params(&p), &opts(5_000, 0)).status;
    assert_eq!(status, EnumerationStatus::Exceeded(5_000));
}
