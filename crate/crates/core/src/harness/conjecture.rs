//! Perfect `P(r, n, k, r-1, q)` with `2 <= r < n`, `gcd(n, k-1, q) = 1`,
//! `k != 1` and `k != 1 + q` mod `n` are of type Z-tilde.
//!
//! With `gcd(n, q) = 1` the tuple is isomorphic to `P(r, n, K, r-1, 1)` with
//! `K - 1 = q^{-1}(k - 1)`, so perfectness is decided once per `(r, K)` and
//! shared by the `phi(n)` tuples mapping to it. The determinant is the
//! product of `f(omega^j)` over a prime field holding `n`-th roots of unity;
//! `|det| = 1` forces that product to be `+-1`, and every such candidate is
//! confirmed exactly. With `d = gcd(n, q) > 1` the hypothesis
//! `gcd(n, k-1, q) = 1` means `d` does not divide `k - 1`, which rules out
//! perfectness for every `r`.

use num_integer::Integer;

use super::{run_by_n, Partial, SearchConfig, SearchReport};
use crate::classify::{perfect_necessary_conditions, Necessary};
use crate::params::{is_type_z, is_type_z_prime, is_type_z_tilde, PrishchepovParams, TypeFParams};
use crate::zpoly::modular::{is_unit_fast, CyclicField};
use crate::zpoly::representer_polynomial;

/// Perfect instances are listed individually up to this `n`.
pub const PERFECT_LIST_N_MAX: u64 = 30;

fn hypotheses(n: u64, k: u64, q: u64) -> bool {
    n.gcd(&q).gcd(&(k - 1)) == 1 && !(k - 1).is_multiple_of(n) && !(k + n - 1 - q % n).is_multiple_of(n)
}

fn conjecture_for_n(n: u64) -> Partial {
    let mut part = Partial::default();
    if n < 3 {
        return part;
    }
    let units: Vec<u64> = (1..=n).filter(|q| q.gcd(&n) == 1).collect();

    // gcd(n, q) > 1: not perfect for any r
    let mut non_coprime = 0u64;
    for q in (1..=n).filter(|q| q.gcd(&n) != 1) {
        for k in (1..=n).filter(|&k| hypotheses(n, k, q)) {
            let p = PrishchepovParams::new(2, n, k, 1, q).expect("valid").params();
            if perfect_necessary_conditions(&p) == Necessary::Passes {
                part.counterexamples.push(p);
            }
            non_coprime += 1;
        }
    }
    part.checked += non_coprime * (n - 2);
    part.count("ruled-out-by-gcd", non_coprime * (n - 2));

    let field = CyclicField::new(n as usize);
    let nu = n as usize;
    // a[j] = sum_{i<r} omega^{ij}, b[j] = sum_{i<r-1} omega^{ij}
    let mut b = vec![1u64; nu];
    let mut a: Vec<u64> = (0..nu).map(|j| (1 + field.omega_pow(j)) % field.p).collect();
    for r in 2..n {
        if r > 2 {
            b.clone_from(&a);
            for (j, x) in a.iter_mut().enumerate() {
                *x = (*x + field.omega_pow((r as usize - 1) * j)) % field.p;
            }
        }
        for big_k in 3..=n {
            let shift = big_k as usize - 1;
            let det = field.product((1..nu).map(|j| field.sub(a[j], field.mul(field.omega_pow(shift * j), b[j]))));
            part.checked += units.len() as u64;
            if !field.is_plus_minus_one(det) {
                continue;
            }
            let reduced = PrishchepovParams::new(r, n, big_k, r - 1, 1).expect("valid").params();
            if !is_unit_fast(&representer_polynomial(&reduced), nu) {
                part.count("filter-false-positive", 1);
                continue;
            }
            for &q in &units {
                let k = (q * (big_k - 1)) % n + 1;
                let p = TypeFParams { k, q, ..reduced };
                debug_assert!(hypotheses(n, k, q));
                record_perfect(&mut part, p);
            }
        }
    }
    part
}

fn record_perfect(part: &mut Partial, p: TypeFParams) {
    part.count("perfect", 1);
    if p.n <= PERFECT_LIST_N_MAX {
        part.push("perfect", p);
    }
    if is_type_z(&p) {
        part.hit("type-z");
    }
    if is_type_z_prime(&p) {
        part.hit("type-z-prime");
    }
    if !is_type_z_tilde(&p) {
        part.counterexamples.push(p);
    }
}

/// Checks every `(n, r, k, q)` with `n` in range, `2 <= r < n` and
/// `k, q in [1, n]` satisfying the hypotheses.
pub fn verify_type_z_tilde_conjecture(cfg: &SearchConfig) -> SearchReport {
    let ranges = format!(
        "n in [{}, {}], 2 <= r < n, k, q in [1, n] (residues mod n), gcd(n, k-1, q) = 1, k != 1 and k != 1 + q mod n",
        cfg.n_min, cfg.n_max
    );
    run_by_n(cfg, "perfect-implies-type-z-tilde", ranges, conjecture_for_n)
}
