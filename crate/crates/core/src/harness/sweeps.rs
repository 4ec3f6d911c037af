//! Cross-validation sweeps: classifier against the determinant, the exact
//! order routes against each other, and named-family classifiers against
//! the determinant over their hypothesis domains.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::{canonical_row, first_row, ClassMap, DeterminantOracle, OrderOracle};
use super::{run_by_n, Partial, SearchConfig, SearchReport};
use crate::classify::{
    classify, classify_gn_qk, classify_h, classify_p_r_n_3, classify_shifted_gn_qk, sieradski_classify,
};
use crate::cosetenum::presentation_from_params;
use crate::params::{PrishchepovParams, TypeFParams};
use crate::spectral::{spectral_factorization, unit_circle_residual};
use crate::zpoly::{
    circulant_determinant, circulant_from_poly, representer_polynomial, resultant_order, smith_normal_form,
    AbOrder, IntPoly,
};

/// Relative tolerance for the floating spectral product against the exact order.
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;
/// Absolute tolerance for the unit-circle residual.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

fn pp(r: u64, n: u64, k: u64, s: u64, q: u64) -> PrishchepovParams {
    PrishchepovParams::new(r, n, k, s, q).expect("grid tuples are valid")
}

fn spectral_error(p: &PrishchepovParams, exact: &BigInt) -> f64 {
    let exact = exact.to_f64().unwrap_or(f64::INFINITY);
    (spectral_factorization(p).product().abs() - exact).abs() / exact
}

struct RowFacts {
    unit: bool,
}

/// Exact facts about one canonical row, checking that determinant, resultant
/// and Smith form agree and that the spectral product approximates them.
fn row_facts(rep: &PrishchepovParams, row: &[i64], part: &mut Partial) -> RowFacts {
    let n = row.len();
    let f = IntPoly::from_i64s(row);
    let c = circulant_from_poly(&f, n);
    let det = circulant_determinant(&c).abs();
    let res = resultant_order(&f, n);
    let snf = smith_normal_form(&c);
    let snf_agrees = match snf.order() {
        AbOrder::Finite(o) => o == det,
        AbOrder::Infinite => det.is_zero(),
    };
    if det != res || !snf_agrees {
        part.counterexamples.push(rep.params());
        part.push("exact-mismatch", rep.params());
        part.count("exact-mismatch", 1);
    }
    if !det.is_zero() {
        let err = spectral_error(rep, &det);
        part.measure("spectral-max-relative-error", err);
        if err.is_nan() || err > SPECTRAL_TOLERANCE {
            part.counterexamples.push(rep.params());
            part.push("spectral-mismatch", rep.params());
            part.count("spectral-mismatch", 1);
        }
    }
    part.count("canonical-rows", 1);
    RowFacts { unit: det.is_one() }
}

fn soundness_for_n(n: u64, r_hi: u64) -> Partial {
    let mut part = Partial::default();
    let map = ClassMap::new(n);
    let mut class_row: HashMap<_, usize> = HashMap::new();
    let mut rows: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut facts: Vec<RowFacts> = Vec::new();
    for r in 1..=r_hi {
        for s in 1..=r_hi {
            for k in 1..=n {
                for q in 1..=n {
                    let p = pp(r, n, k, s, q);
                    let key = map.key(&p);
                    let idx = match class_row.get(&key) {
                        Some(&i) => i,
                        None => {
                            let rep = map.representative(key);
                            let row = canonical_row(&first_row(&rep));
                            let i = match rows.get(&row) {
                                Some(&i) => i,
                                None => {
                                    facts.push(row_facts(&rep, &row, &mut part));
                                    rows.insert(row, facts.len() - 1);
                                    facts.len() - 1
                                }
                            };
                            class_row.insert(key, i);
                            i
                        }
                    };
                    let v = classify(&p.params());
                    part.hit(v.reason.tag());
                    if v.perfect != facts[idx].unit {
                        part.counterexamples.push(p.params());
                        part.count("classify-mismatch", 1);
                    }
                    part.checked += 1;
                }
            }
        }
    }
    part.count("classes", class_row.len() as u64);
    part
}

/// `classify(p).perfect` against `|det| = 1` for every `p` with
/// `r, s <= r_max` (default `2n + 2`) and `k, q` over residues mod `n`. Each
/// distinct circulant, up to signed permutation equivalence, also has its
/// determinant, resultant, Smith form and spectral product compared.
pub fn soundness_sweep(cfg: &SearchConfig) -> SearchReport {
    let ranges = format!(
        "n in [{}, {}], r, s in [1, {}], k, q in [1, n], epsilon = -1",
        cfg.n_min,
        cfg.n_max,
        cfg.r_max.map_or("2n+2".into(), |r| r.to_string())
    );
    run_by_n(cfg, "classify-matches-determinant", ranges, |n| {
        soundness_for_n(n, cfg.r_max.unwrap_or(2 * n + 2))
    })
}

/// The `H(r, n, s) = P(r, n, r+1, s, 1)` classifier against the determinant
/// for `r, s <= r_max` (default 50).
pub fn h_family_sweep(cfg: &SearchConfig) -> SearchReport {
    let r_hi = cfg.r_max.unwrap_or(50);
    let ranges = format!("n in [{}, {}], r, s in [1, {r_hi}]", cfg.n_min, cfg.n_max);
    run_by_n(cfg, "h-family-matches-determinant", ranges, |n| {
        let mut part = Partial::default();
        let mut oracle = DeterminantOracle::new();
        for r in 1..=r_hi {
            for s in 1..=r_hi {
                let p = pp(r, n, r + 1, s, 1);
                let v = classify_h(r, n, s).expect("valid H parameters");
                let expected = r.abs_diff(s) == 1 && (r % n == 0 || s % n == 0);
                if v.perfect != oracle.is_perfect(&p) || v.perfect != expected {
                    part.counterexamples.push(p.params());
                }
                if v.perfect {
                    part.count("perfect", 1);
                }
                part.checked += 1;
            }
        }
        part
    })
}

/// Representer polynomials of `P(r,n,k,r-1,1)` and `P(k-1,n,r+1,k-2,1)`
/// agree, both as computed and as read off the relator words, for
/// `k in [3, n]` and `r in [2, r_max]` (default 20).
pub fn polynomial_identity_sweep(cfg: &SearchConfig) -> SearchReport {
    let r_hi = cfg.r_max.unwrap_or(20);
    let ranges = format!("n in [max(3,{}), {}], k in [3, n], r in [2, {r_hi}]", cfg.n_min, cfg.n_max);
    run_by_n(cfg, "representer-identity", ranges, |n| {
        let mut part = Partial::default();
        if n < 3 {
            return part;
        }
        let word_sums = |p: &TypeFParams| {
            let pres = presentation_from_params(p);
            let mut v = if pres.relators.is_empty() {
                vec![0; n as usize]
            } else {
                pres.exponent_sums(0)
            };
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        for k in 3..=n {
            for r in 2..=r_hi {
                let a = pp(r, n, k, r - 1, 1).params();
                let b = pp(k - 1, n, r + 1, k - 2, 1).params();
                let (fa, fb) = (representer_polynomial(&a), representer_polynomial(&b));
                if fa != fb || word_sums(&a) != word_sums(&b) || fa.to_i64s() != Some(word_sums(&a)) {
                    part.counterexamples.push(a);
                }
                part.checked += 1;
            }
        }
        part
    })
}

/// `S(r, n) = P(r, n, 2, r-1, 2)`: the classifier, the determinant and
/// `gcd(4r - 2, n) = 1` agree for `r in [2, r_max]` (default 20).
pub fn sieradski_sweep(cfg: &SearchConfig) -> SearchReport {
    let r_hi = cfg.r_max.unwrap_or(20);
    let ranges = format!("n in [{}, {}], r in [2, {r_hi}]", cfg.n_min, cfg.n_max);
    run_by_n(cfg, "sieradski-matches-determinant", ranges, |n| {
        let mut part = Partial::default();
        let mut oracle = DeterminantOracle::new();
        for r in 2..=r_hi {
            let p = pp(r, n, 2, r - 1, 2);
            let v = sieradski_classify(r, n).expect("r, n >= 2");
            let coprime = (4 * r - 2).gcd(&n) == 1;
            if v.perfect != oracle.is_perfect(&p) || v.perfect != coprime {
                part.counterexamples.push(p.params());
            }
            part.checked += 1;
        }
        part
    })
}

/// `|P(a n + r', n, k, b n + s', q)^ab| |r' - s'| = |r - s| |P(r', n, k, s', q)^ab|`
/// for `a, b in [0, 2]`, `r' != s'` in `[1, n]`, `gcd(n, q) = 1` and finite
/// base order.
pub fn scaling_sweep(cfg: &SearchConfig) -> SearchReport {
    let ranges = format!(
        "n in [{}, {}], alpha, beta in [0, 2], r', s' in [1, n], k, q in [1, n], gcd(n, q) = 1",
        cfg.n_min, cfg.n_max
    );
    run_by_n(cfg, "abelianization-scaling", ranges, |n| {
        let mut part = Partial::default();
        let mut orders = OrderOracle::default();
        for q in (1..=n).filter(|q| q.gcd(&n) == 1) {
            for k in 1..=n {
                for r0 in 1..=n {
                    for s0 in (1..=n).filter(|&s0| s0 != r0) {
                        let base = pp(r0, n, k, s0, q);
                        let AbOrder::Finite(base_order) = orders.order(&base) else {
                            part.count("infinite-base", 1);
                            continue;
                        };
                        for alpha in 0..=2 {
                            for beta in 0..=2 {
                                let (r, s) = (alpha * n + r0, beta * n + s0);
                                let p = pp(r, n, k, s, q);
                                let lhs = orders.order(&p);
                                let rhs = &base_order * BigInt::from(r.abs_diff(s));
                                let ok = match lhs {
                                    AbOrder::Finite(o) => o * BigInt::from(r0.abs_diff(s0)) == rhs,
                                    AbOrder::Infinite => false,
                                };
                                if !ok {
                                    part.counterexamples.push(p.params());
                                }
                                part.checked += 1;
                            }
                        }
                    }
                }
            }
        }
        part
    })
}

/// The classifiers for `G_n(q, k-1)`, `P(r, n, 3, r-1, 1)` and
/// `P(a n + 2, n, k, b n + 1, q)` against the determinant, each over its
/// hypothesis domain: `gcd(n, q, k-1) = 1` with `k, q in [1, n]`,
/// `r in [1, 2n+2]`, and `a, b in [0, 2]`.
pub fn named_family_sweep(cfg: &SearchConfig) -> SearchReport {
    let ranges = format!(
        "n in [{}, {}], k, q in [1, n] with gcd(n, q, k-1) = 1, r in [1, 2n+2], alpha, beta in [0, 2]",
        cfg.n_min, cfg.n_max
    );
    run_by_n(cfg, "named-families-match-determinant", ranges, |n| {
        let mut part = Partial::default();
        let mut oracle = DeterminantOracle::new();
        let mut check = |part: &mut Partial, list: &str, perfect: bool, p: PrishchepovParams| {
            // r = 1 with s = 0 is not a presentation of the family; its
            // relators are single generators
            let expected = if p.s == 0 { true } else { oracle.is_perfect(&p) };
            if perfect != expected {
                part.counterexamples.push(p.params());
                part.push(list, p.params());
            }
            part.hit(list);
            part.checked += 1;
        };
        for k in 1..=n {
            for q in 1..=n {
                if n.gcd(&q).gcd(&(k - 1)) != 1 {
                    continue;
                }
                let v = classify_gn_qk(n, q, k).expect("in domain");
                check(&mut part, "gn-q-k", v.perfect, pp(2, n, k, 1, q));
                for alpha in 0..=2 {
                    for beta in 0..=2 {
                        let v = classify_shifted_gn_qk(n, k, q, alpha, beta).expect("in domain");
                        let p = pp(alpha * n + 2, n, k, beta * n + 1, q);
                        check(&mut part, "shifted-gn-q-k", v.perfect, p);
                    }
                }
            }
        }
        for r in 1..=2 * n + 2 {
            let v = classify_p_r_n_3(r, n).expect("in domain");
            let p = if r == 1 {
                PrishchepovParams::new_unchecked(1, n, 3, 0, 1)
            } else {
                pp(r, n, 3, r - 1, 1)
            };
            check(&mut part, "k-equals-3", v.perfect, p);
        }
        part
    })
}

/// The spectral product against the exact order for `r, s <= r_max`
/// (default 5) and `k, q` over residues mod `n`, in finite cases, plus the
/// unit-circle residual at `samples` random points with `r` in `[2, 50]`.
pub fn spectral_sweep(cfg: &SearchConfig, samples: u64) -> SearchReport {
    let r_hi = cfg.r_max.unwrap_or(5);
    let ranges = format!(
        "n in [{}, {}], r, s in [1, {r_hi}], k, q in [1, n]; {samples} unit-circle samples with r in [2, 50]",
        cfg.n_min, cfg.n_max
    );
    let mut report = run_by_n(cfg, "spectral-matches-exact", ranges, |n| {
        let mut part = Partial::default();
        let mut orders = OrderOracle::default();
        for r in 1..=r_hi {
            for s in 1..=r_hi {
                for k in 1..=n {
                    for q in 1..=n {
                        let p = pp(r, n, k, s, q);
                        let AbOrder::Finite(o) = orders.order(&p) else {
                            part.count("infinite", 1);
                            continue;
                        };
                        let err = spectral_error(&p, &o);
                        part.measure("spectral-max-relative-error", err);
                        if err.is_nan() || err > SPECTRAL_TOLERANCE {
                            part.counterexamples.push(p.params());
                        }
                        part.checked += 1;
                    }
                }
            }
        }
        part
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0f64;
    for _ in 0..samples {
        let r: u64 = rng.gen_range(2..=50);
        let z = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let res = unit_circle_residual(r, z).unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        if res > RESIDUAL_TOLERANCE {
            *report.counts.entry("unit-circle-failures".into()).or_default() += 1;
        }
    }
    report.measures.insert("unit-circle-max-residual".into(), worst);
    *report.counts.entry("unit-circle-samples".into()).or_default() += samples;
    report.verified = report.counterexamples.is_empty() && worst <= RESIDUAL_TOLERANCE;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Execution;

    fn cfg(n_max: u64) -> SearchConfig {
        let mut c = SearchConfig::new(n_max);
        c.execution = Execution::Sequential;
        c
    }

    #[test]
    fn small_sweeps_pass() {
        let c = cfg(7);
        for report in [
            soundness_sweep(&c),
            h_family_sweep(&c),
            polynomial_identity_sweep(&c),
            sieradski_sweep(&c),
            scaling_sweep(&c),
            named_family_sweep(&c),
            spectral_sweep(&c, 200),
        ] {
            assert!(report.verified, "{}", report.to_json());
            assert!(report.checked > 0, "{}", report.statement);
        }
    }

    #[test]
    fn soundness_counts_every_tuple() {
        let report = soundness_sweep(&cfg(4));
        let expected: u64 = (2..=4u64).map(|n| (2 * n + 2).pow(2) * n * n).sum();
        assert_eq!(report.checked, expected);
        assert_eq!(report.theorem_hits.values().sum::<u64>(), expected);
        assert!(report.count("canonical-rows") <= report.count("classes"));
    }

    #[test]
    fn planted_mismatch_is_reported() {
        let mut part = Partial::default();
        let rep = pp(2, 3, 3, 1, 1);
        // exact routes agree with each other and with the spectral product
        row_facts(&rep, &first_row(&rep), &mut part);
        assert!(part.counterexamples.is_empty());
        // a row of order 27 against a representative of order 4
        row_facts(&rep, &[3, 0, 0], &mut part);
        assert_eq!(part.counterexamples, vec![rep.params()]);
    }
}
