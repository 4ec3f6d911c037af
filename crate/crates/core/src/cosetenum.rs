//! Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! HLT strategy: cosets are processed in order, every relator is scanned and
//! filled at each live coset, and coincidences are resolved through a
//! union-find queue. An enumeration that closes certifies the group order; a
//! closed table is re-verified against every relator before it is reported.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{self, Rule, Triviality};
use crate::params::{PrishchepovParams, TypeFParams};
use crate::zpoly::{ab_order, AbOrder};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// `(generator, exponent)` with exponent `+1` or `-1`.
pub type Letter = (usize, i8);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePresentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl FinitePresentation {
    /// Plain-text export: one relator per line, `x3^-1` for inverses.
    pub fn to_text(&self) -> String {
        self.relators
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "1".to_string();
                }
                w.iter()
                    .map(|&(g, e)| if e < 0 { format!("x{g}^-1") } else { format!("x{g}") })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Exponent sum of each generator in relator `j`.
    pub fn exponent_sums(&self, j: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.generator_count];
        for &(g, e) in &self.relators[j] {
            v[g] += e as i64;
        }
        v
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Free and cyclic reduction.
pub fn cyclically_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo].0 == out[hi - 1].0 && out[lo].1 == -out[hi - 1].1 {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

/// The `n` shifts of the type-F relator, cyclically reduced. Relators that
/// reduce to the empty word are dropped.
pub fn presentation_from_params(p: &TypeFParams) -> FinitePresentation {
    let n = p.n as usize;
    let q = (p.q % p.n) as usize;
    let k1 = ((p.k - 1) % p.n) as usize;
    let relators = (0..n)
        .map(|j| {
            let mut w: Vec<Letter> = (0..p.r as usize).map(|i| ((j + i * q) % n, 1)).collect();
            let second = (0..p.s as usize).map(|i| ((j + k1 + i * q) % n, 1));
            if p.is_prishchepov() {
                let second: Vec<Letter> = second.collect();
                w.extend(second.into_iter().rev().map(|(g, _)| (g, -1)));
            } else {
                w.extend(second);
            }
            cyclically_reduce(&w)
        })
        .filter(|w| !w.is_empty())
        .collect();
    FinitePresentation {
        generator_count: n,
        relators,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum EnumerationStatus {
    /// Closed; the group has exactly this order.
    Complete(usize),
    /// Ran out of coset budget; inconclusive.
    Exceeded(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub max_cosets: usize,
    /// Permutes and rotates relators before scanning. Completed enumerations
    /// give the same order for every seed.
    pub seed: u64,
    /// On budget exhaustion, scan every coset for deductions without defining
    /// new cosets, compact the table, and carry on if space was freed.
    pub lookahead: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_cosets: DEFAULT_MAX_COSETS,
            seed: 0,
            lookahead: false,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Coset table with columns `2g` (for `x_g`) and `2g + 1` (for `x_g^-1`).
#[derive(Debug, Clone)]
pub struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    /// Relators first, then every distinct cyclic conjugate of each relator
    /// and its inverse.
    words: Vec<Vec<usize>>,
    relator_count: usize,
    /// `starting_with[x]`: indices into `words` of conjugates beginning with
    /// column `x`.
    starting_with: Vec<Vec<usize>>,
    deductions: Vec<(u32, u32)>,
    max_cosets: usize,
    pub status: EnumerationStatus,
}

#[inline]
fn inv(c: usize) -> usize {
    c ^ 1
}

fn column(l: Letter) -> usize {
    2 * l.0 + usize::from(l.1 < 0)
}

struct BudgetExhausted;

const MAX_PENDING_DEDUCTIONS: usize = 1 << 20;

impl CosetTable {
    fn new(generators: usize, relators: Vec<Vec<usize>>, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        let relator_count = relators.len();
        let mut words = relators.clone();
        let mut starting_with = vec![Vec::new(); cols];
        let mut seen = std::collections::HashSet::new();
        for w in relators.iter().filter(|w| !w.is_empty()) {
            let inverse: Vec<usize> = w.iter().rev().map(|&x| inv(x)).collect();
            for base in [w, &inverse] {
                for shift in 0..base.len() {
                    let mut c = base.clone();
                    c.rotate_left(shift);
                    if seen.insert(c.clone()) {
                        starting_with[c[0]].push(words.len());
                        words.push(c);
                    }
                }
            }
        }
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            words,
            relator_count,
            starting_with,
            deductions: Vec::new(),
            max_cosets,
            status: EnumerationStatus::Exceeded(max_cosets),
        }
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    pub fn live_cosets(&self) -> usize {
        (0..self.defined()).filter(|&c| self.is_live(c)).count()
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, BudgetExhausted> {
        if self.defined() >= self.max_cosets {
            return Err(BudgetExhausted);
        }
        let d = self.defined();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.link(c, x, d);
        Ok(d)
    }

    /// `c . x = d` and `d . x^-1 = c`, queued for deduction processing.
    fn link(&mut self, c: usize, x: usize, d: usize) {
        self.set(c, x, d as u32);
        self.set(d, inv(x), c as u32);
        if self.deductions.len() < MAX_PENDING_DEDUCTIONS {
            self.deductions.push((c as u32, x as u32));
        }
    }

    /// Scans, without defining cosets, every relator conjugate through each
    /// newly filled entry.
    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            let (c, x) = (c as usize, x as usize);
            for i in 0..self.starting_with[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.starting_with[x][i];
                let _ = self.scan(c, w, false);
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == NONE || !self.is_live(d as usize) {
                continue;
            }
            for i in 0..self.starting_with[inv(x)].len() {
                if !self.is_live(d as usize) {
                    break;
                }
                let w = self.starting_with[inv(x)][i];
                let _ = self.scan(d as usize, w, false);
            }
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo as u32;
        self.queue.push(hi as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.set(f, inv(x), NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    let t = self.rep(ex as usize);
                    self.merge(f1, t);
                } else {
                    let fx = self.get(f1, inv(x));
                    if fx != NONE {
                        let t = self.rep(fx as usize);
                        self.merge(e1, t);
                    } else {
                        self.link(e1, x, f1);
                    }
                }
            }
        }
    }

    /// Scans relator `w` at coset `c`; with `fill`, defines cosets to close
    /// the gap, otherwise only records deductions and coincidences.
    fn scan(&mut self, c: usize, w_idx: usize, fill: bool) -> Result<(), BudgetExhausted> {
        let len = self.words[w_idx].len();
        if len == 0 {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = len as isize - 1;
        loop {
            while i < len {
                let x = self.words[w_idx][i];
                let nx = self.get(f, x);
                if nx == NONE {
                    break;
                }
                f = nx as usize;
                i += 1;
            }
            if i >= len {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize {
                let x = inv(self.words[w_idx][j as usize]);
                let nb = self.get(b, x);
                if nb == NONE {
                    break;
                }
                b = nb as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = self.words[w_idx][i];
                self.link(f, x, b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            let x = self.words[w_idx][i];
            self.define(f, x)?;
        }
    }

    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.defined() {
            for w in 0..self.relator_count {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, w, false);
            }
            self.process_deductions();
            c += 1;
        }
    }

    /// Renumbers the live cosets to `0..live` in order; returns the new index
    /// of `keep`, or of the next live coset after it.
    fn compact(&mut self, keep: usize) -> usize {
        let n = self.defined();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c, x);
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        (keep..n).find(|&c| map[c] != NONE).map_or(next as usize, |c| map[c] as usize)
    }

    fn run(&mut self, lookahead: bool) {
        let mut c = 0usize;
        while c < self.defined() {
            let mut exhausted = false;
            for w in 0..self.relator_count {
                if !self.is_live(c) {
                    break;
                }
                let r = self.scan(c, w, true);
                self.process_deductions();
                if r.is_err() {
                    exhausted = true;
                    break;
                }
            }
            if !exhausted && self.is_live(c) {
                for x in 0..self.cols {
                    if self.is_live(c) && self.get(c, x) == NONE {
                        if self.define(c, x).is_err() {
                            exhausted = true;
                            break;
                        }
                        self.process_deductions();
                    }
                }
            }
            if exhausted {
                if !lookahead {
                    return;
                }
                let before = self.live_cosets();
                self.lookahead();
                c = self.compact(c);
                if self.defined() >= self.max_cosets || self.live_cosets() == before && self.defined() == before {
                    // nothing was freed
                    if self.defined() >= self.max_cosets {
                        return;
                    }
                }
                continue;
            }
            c += 1;
        }
        let live = self.live_cosets();
        self.compact(0);
        if self.verify() {
            self.status = EnumerationStatus::Complete(live);
        }
    }

    /// Every entry is defined, inverse columns agree, and every relator closes
    /// at every coset.
    fn verify(&self) -> bool {
        let n = self.defined();
        for c in 0..n {
            for x in 0..self.cols {
                let d = self.get(c, x);
                if d == NONE || self.get(d as usize, inv(x)) as usize != c {
                    return false;
                }
            }
            for w in &self.words[..self.relator_count] {
                let end = w.iter().fold(c, |cur, &x| self.get(cur, x) as usize);
                if end != c {
                    return false;
                }
            }
        }
        true
    }

    /// Action of generator column `x` on coset `c`, after completion.
    pub fn action(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.get(c, x);
        (v != NONE).then_some(v as usize)
    }
}

pub fn todd_coxeter(pres: &FinitePresentation, opts: &EnumerationOptions) -> CosetTable {
    assert!(opts.max_cosets >= 1, "max_cosets must be at least 1");
    let mut relators: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|w| w.iter().map(|&l| column(l)).collect())
        .collect();
    if opts.seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        relators.shuffle(&mut rng);
        for w in relators.iter_mut().filter(|w| !w.is_empty()) {
            let shift = rng.gen_range(0..w.len());
            w.rotate_left(shift);
        }
    }
    let mut table = CosetTable::new(pres.generator_count, relators, opts.max_cosets);
    table.run(opts.lookahead);
    table
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TrivialityCertificate {
    Trivial { by: Rule },
    Nontrivial { by: Rule, detail: String },
    Unknown { detail: String },
}

/// Trivial only with a certificate: the trivial-congruence criterion or a
/// closed enumeration of order 1. Nontrivial when the abelianization is
/// nontrivial, a classification statement rules triviality out, or the
/// enumeration closes with order > 1.
pub fn certify_trivial(p: &PrishchepovParams, opts: &EnumerationOptions) -> TrivialityCertificate {
    if classify::trivial_sufficient(p) {
        return TrivialityCertificate::Trivial {
            by: Rule::TrivialCongruence,
        };
    }
    let order = ab_order(p);
    if !order.is_one() {
        return TrivialityCertificate::Nontrivial {
            by: Rule::DeterminantOracle,
            detail: match order {
                AbOrder::Finite(o) => format!("abelianization has order {o}"),
                AbOrder::Infinite => "abelianization is infinite".into(),
            },
        };
    }
    let verdict = classify::classify(p);
    if verdict.trivial == Triviality::No {
        return TrivialityCertificate::Nontrivial {
            by: verdict.trivial_reason.unwrap_or(verdict.reason),
            detail: format!("ruled out by {}", verdict.trivial_reason.unwrap_or(verdict.reason)),
        };
    }
    if verdict.trivial == Triviality::Yes {
        return TrivialityCertificate::Trivial {
            by: verdict.trivial_reason.unwrap_or(verdict.reason),
        };
    }
    match todd_coxeter(&presentation_from_params(p), opts).status {
        EnumerationStatus::Complete(1) => TrivialityCertificate::Trivial {
            by: Rule::CosetEnumeration,
        },
        EnumerationStatus::Complete(m) => TrivialityCertificate::Nontrivial {
            by: Rule::CosetEnumeration,
            detail: format!("group has order {m}"),
        },
        EnumerationStatus::Exceeded(b) => TrivialityCertificate::Unknown {
            detail: format!("enumeration exceeded {b} cosets"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Sign;

    fn pp(r: u64, n: u64, k: u64, s: u64, q: u64) -> PrishchepovParams {
        PrishchepovParams::new(r, n, k, s, q).unwrap()
    }

    fn order(p: &TypeFParams) -> EnumerationStatus {
        todd_coxeter(&presentation_from_params(p), &EnumerationOptions::default()).status
    }

    #[test]
    fn fibonacci_presentation() {
        let pres = presentation_from_params(&pp(2, 3, 3, 1, 1));
        assert_eq!(pres.relators.len(), 3);
        assert_eq!(pres.relators[0], vec![(0, 1), (1, 1), (2, -1)]);
        assert_eq!(pres.relators[2], vec![(2, 1), (0, 1), (1, -1)]);
        assert_eq!(pres.to_text().lines().next(), Some("x0*x1*x2^-1"));
    }

    #[test]
    fn positive_relator() {
        let p = TypeFParams::new(1, 4, 1, 1, 1, Sign::Plus).unwrap();
        let pres = presentation_from_params(&p);
        assert_eq!(pres.relators[1], vec![(1, 1), (1, 1)]);
        // x_j x_{j+1} = 1 for n = 3 leaves Z_2
        let p = TypeFParams::new(1, 3, 2, 1, 1, Sign::Plus).unwrap();
        assert_eq!(order(&p), EnumerationStatus::Complete(2));
    }

    #[test]
    fn reduction() {
        assert_eq!(cyclically_reduce(&[(0, 1), (1, 1), (1, -1), (0, -1)]), vec![]);
        assert_eq!(cyclically_reduce(&[(0, 1), (1, 1), (2, 1), (0, -1)]), vec![(1, 1), (2, 1)]);
        // k = 1 + q(r - s): the two products cancel at the junction
        let pres = presentation_from_params(&pp(3, 5, 2, 2, 1));
        assert!(pres.relators.iter().all(|w| w.len() == 1));
    }

    #[test]
    fn small_groups() {
        assert_eq!(order(&pp(2, 3, 3, 1, 1)), EnumerationStatus::Complete(8));
        assert_eq!(order(&pp(2, 4, 3, 1, 1)), EnumerationStatus::Complete(5));
        assert_eq!(order(&pp(2, 5, 3, 1, 1)), EnumerationStatus::Complete(11));
        assert_eq!(order(&pp(2, 3, 2, 1, 2)), EnumerationStatus::Complete(8));
        assert_eq!(order(&pp(2, 4, 2, 1, 2)), EnumerationStatus::Complete(24));
        assert_eq!(order(&pp(2, 5, 2, 1, 2)), EnumerationStatus::Complete(120));
        assert_eq!(order(&pp(3, 5, 3, 2, 1)), EnumerationStatus::Complete(1));
        assert_eq!(order(&pp(3, 5, 5, 2, 1)), EnumerationStatus::Complete(1));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        // F(2,6) is infinite
        let t = todd_coxeter(
            &presentation_from_params(&pp(2, 6, 3, 1, 1)),
            &EnumerationOptions { max_cosets: 2000, ..Default::default() },
        );
        assert_eq!(t.status, EnumerationStatus::Exceeded(2000));
    }

    #[test]
    fn seeds_agree() {
        for p in [pp(2, 5, 2, 1, 2), pp(2, 4, 2, 1, 2), pp(3, 5, 3, 2, 1), pp(2, 7, 3, 1, 1)] {
            let base = order(&p);
            for seed in 1..6 {
                let t = todd_coxeter(
                    &presentation_from_params(&p),
                    &EnumerationOptions { seed, ..Default::default() },
                );
                assert_eq!(t.status, base, "{p} seed {seed}");
            }
        }
    }

    #[test]
    fn lookahead_closes_within_tight_budget() {
        let pres = presentation_from_params(&pp(2, 5, 2, 1, 2));
        let plain = todd_coxeter(&pres, &EnumerationOptions { max_cosets: 400, ..Default::default() });
        let la = todd_coxeter(
            &pres,
            &EnumerationOptions { max_cosets: 400, lookahead: true, ..Default::default() },
        );
        if let EnumerationStatus::Complete(m) = plain.status {
            assert_eq!(m, 120);
        }
        assert_eq!(la.status, EnumerationStatus::Complete(120));
    }

    #[test]
    fn certify_examples() {
        let opts = EnumerationOptions::default();
        assert_eq!(
            certify_trivial(&pp(3, 5, 1, 2, 1), &opts),
            TrivialityCertificate::Trivial { by: Rule::TrivialCongruence }
        );
        assert!(matches!(
            certify_trivial(&pp(2, 3, 3, 1, 1), &opts),
            TrivialityCertificate::Nontrivial { .. }
        ));
        assert_eq!(
            certify_trivial(&pp(3, 5, 3, 2, 1), &opts),
            TrivialityCertificate::Trivial { by: Rule::CosetEnumeration }
        );
    }
}
