//! Grouping grid tuples whose relation circulants agree up to unimodular
//! equivalence, so that each determinant or Smith form is computed once.
//!
//! For a unit `u` mod `n`, the circulant of `f(t^u)` is `P C P^T` for the
//! permutation `i -> u i`, and `f(t^u)` is the representer polynomial of
//! `(r, n, u(k-1)+1, s, uq)`. Exchanging `r` and `s` replaces `f` by
//! `-t^{-(k-1)} f`. Rotating, reflecting or negating the first row multiplies
//! the circulant by signed permutation matrices. None of these change `|det|`
//! or the Smith form.

use std::collections::HashMap;

use num_integer::Integer;

use crate::params::PrishchepovParams;
use crate::zpoly::{ab_order, circulant_from_poly, circulant_is_unit, representer_polynomial, AbOrder, IntPoly};

/// `(r, s, (k-1) mod n, q mod n)` after normalization.
pub type ClassKey = (u64, u64, u64, u64);

pub struct ClassMap {
    n: u64,
    units: Vec<u64>,
}

impl ClassMap {
    pub fn new(n: u64) -> Self {
        ClassMap {
            n,
            units: (1..=n).filter(|u| u.gcd(&n) == 1).collect(),
        }
    }

    fn min_orbit(&self, b: u64, a: u64) -> (u64, u64) {
        let n = self.n;
        self.units
            .iter()
            .map(|&u| (a * u % n, b * u % n))
            .min()
            .expect("1 is a unit")
    }

    pub fn key(&self, p: &PrishchepovParams) -> ClassKey {
        let n = self.n;
        let b = (p.k - 1) % n;
        let a = p.q % n;
        let swapped = (n - b) % n;
        let (r, s, b) = if p.r >= p.s { (p.r, p.s, b) } else { (p.s, p.r, swapped) };
        let (a1, b1) = self.min_orbit(b, a);
        let (a1, b1) = if p.r == p.s {
            (a1, b1).min(self.min_orbit(swapped, a))
        } else {
            (a1, b1)
        };
        (r, s, b1, a1)
    }

    pub fn representative(&self, key: ClassKey) -> PrishchepovParams {
        let (r, s, b, a) = key;
        let q = if a == 0 { self.n } else { a };
        PrishchepovParams::new(r, self.n, b + 1, s, q).expect("valid class representative")
    }
}

/// Least first row among all rotations, reflections and negations.
pub fn canonical_row(row: &[i64]) -> Vec<i64> {
    let n = row.len();
    let mut best: Option<Vec<i64>> = None;
    let mut cand = vec![0i64; n];
    for neg in [1i64, -1] {
        for reflect in [false, true] {
            for shift in 0..n {
                for (i, c) in cand.iter_mut().enumerate() {
                    let src = if reflect { (n - i) % n } else { i };
                    *c = neg * row[(src + shift) % n];
                }
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand.clone());
                }
            }
        }
    }
    best.unwrap_or_default()
}

pub fn first_row(p: &PrishchepovParams) -> Vec<i64> {
    let mut row = representer_polynomial(p).to_i64s().expect("small coefficients");
    row.resize(p.n as usize, 0);
    row
}

/// Values that depend only on the equivalence class, computed once per class
/// on its representative.
pub struct ClassMemo<T> {
    maps: HashMap<u64, ClassMap>,
    cache: HashMap<(u64, ClassKey), T>,
}

impl<T> Default for ClassMemo<T> {
    fn default() -> Self {
        ClassMemo {
            maps: HashMap::new(),
            cache: HashMap::new(),
        }
    }
}

impl<T: Clone> ClassMemo<T> {
    pub fn get(&mut self, p: &PrishchepovParams, compute: impl FnOnce(&PrishchepovParams) -> T) -> T {
        let map = self.maps.entry(p.n).or_insert_with(|| ClassMap::new(p.n));
        let key = map.key(p);
        if let Some(v) = self.cache.get(&(p.n, key)) {
            return v.clone();
        }
        let v = compute(&map.representative(key));
        self.cache.insert((p.n, key), v.clone());
        v
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

/// `|det| = 1` for the relation circulant, memoized over equivalence classes.
#[derive(Default)]
pub struct DeterminantOracle(ClassMemo<bool>);

impl DeterminantOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_perfect(&mut self, p: &PrishchepovParams) -> bool {
        self.0.get(p, unit_without_memo)
    }

    pub fn cached(&self) -> usize {
        self.0.cached()
    }
}

/// `|G^ab|`, memoized over equivalence classes.
#[derive(Default)]
pub struct OrderOracle(ClassMemo<AbOrder>);

impl OrderOracle {
    pub fn order(&mut self, p: &PrishchepovParams) -> AbOrder {
        self.0.get(p, |rep| ab_order(rep))
    }
}

/// The same test without any class reduction.
pub fn unit_without_memo(p: &PrishchepovParams) -> bool {
    let f = IntPoly::from_i64s(&first_row(p));
    circulant_is_unit(&circulant_from_poly(&f, p.n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::abelian_invariants;

    #[test]
    fn classes_preserve_invariants() {
        for n in 2..=9u64 {
            let map = ClassMap::new(n);
            for r in 1..=6 {
                for s in 1..=6 {
                    for k in 1..=n {
                        for q in 1..=n {
                            let p = PrishchepovParams::new(r, n, k, s, q).unwrap();
                            let rep = map.representative(map.key(&p));
                            assert_eq!(ab_order(&p), ab_order(&rep), "{p} vs {rep}");
                            assert_eq!(abelian_invariants(&p), abelian_invariants(&rep), "{p} vs {rep}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_rows_preserve_invariants() {
        let rows = [vec![1i64, 1, -1, 0, 0, 0], vec![2, 0, -1, 0, 1, -1], vec![0, 3, -2, 0, 0, 0]];
        for row in rows {
            let c = canonical_row(&row);
            let a = crate::zpoly::smith_normal_form(&circulant_from_poly(&IntPoly::from_i64s(&row), 6));
            let b = crate::zpoly::smith_normal_form(&circulant_from_poly(&IntPoly::from_i64s(&c), 6));
            assert_eq!(a, b);
        }
        assert_eq!(canonical_row(&[0, 1, 0]), canonical_row(&[0, 0, -1]));
    }

    #[test]
    fn memo_agrees_with_direct() {
        let mut oracle = DeterminantOracle::new();
        for n in 2..=8u64 {
            for r in 1..=5 {
                for k in 1..=n {
                    for q in 1..=n {
                        let p = PrishchepovParams::new(r + 1, n, k, r, q).unwrap();
                        assert_eq!(oracle.is_perfect(&p), unit_without_memo(&p), "{p}");
                    }
                }
            }
        }
        assert!(oracle.cached() > 0);
    }
}
