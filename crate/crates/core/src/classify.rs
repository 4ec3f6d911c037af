//! Decision procedures for perfectness and triviality of Prishchepov groups.
//!
//! Each theorem-specific function checks its own hypotheses and returns
//! [`Error::Hypothesis`] outside them. [`classify`] chains the cheap
//! filters, the isomorphism-preserving reductions and the named-family
//! criteria, and falls back to an exact determinant test.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::cosetenum::{self, EnumerationOptions, EnumerationStatus};
use crate::error::{hypothesis, Result};
use crate::params::{
    congruent, free_product_decompose, gcd3, is_type_z, is_type_z_prime, is_type_z_tilde,
    reduce_q_to_one, residue, swap_r_s, PrishchepovParams, Sign, TypeFParams,
};
use crate::zpoly::{modular, representer_polynomial};

/// The statement that decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// `|r + eps s| = 1` is necessary.
    #[serde(rename = "exponent-sum")]
    ExponentSum,
    /// `|r - s| = 1` with `k = 1` or `k = 1 + q(r - s)` gives the trivial group.
    #[serde(rename = "trivial-congruence")]
    TrivialCongruence,
    /// Perfect implies `k = 1 mod gcd(n, q)`.
    #[serde(rename = "gcd-divides-k-minus-1")]
    GcdDividesKMinus1,
    /// `r = 0 mod n` and `gcd(n, q) = 1` with `s = r - 1` is perfect.
    #[serde(rename = "r-divisible-by-n")]
    RDivisibleByN,
    /// Perfect, trivial and the arithmetic condition coincide for `H(r,n,s)`.
    #[serde(rename = "h-family")]
    HFamily,
    /// Perfectness criterion for type Z-tilde.
    #[serde(rename = "type-z-tilde")]
    TypeZTilde,
    /// Triviality criterion for type Z.
    #[serde(rename = "type-z-triviality")]
    TypeZTriviality,
    /// `k = qr + 1`: perfect exactly when the trivial congruences hold.
    #[serde(rename = "h-form-shift")]
    HFormShift,
    /// `S(r,n)` is perfect iff `gcd(4r - 2, n) = 1`.
    #[serde(rename = "sieradski")]
    Sieradski,
    /// Reduction of `r, s` by multiples of `n`.
    #[serde(rename = "block-reduction")]
    BlockReduction,
    /// Perfectness of `G_n(q, k - 1)`.
    #[serde(rename = "gn-q-k")]
    GnQk,
    /// Perfectness of `P(r,n,3,r-1,1)`.
    #[serde(rename = "k-equals-3")]
    KEquals3,
    /// Perfectness and triviality of `P(an+2, n, k, bn+1, q)`.
    #[serde(rename = "shifted-gn-q-k")]
    ShiftedGnQk,
    #[serde(rename = "determinant-oracle")]
    DeterminantOracle,
    #[serde(rename = "coset-enumeration")]
    CosetEnumeration,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::ExponentSum,
        Rule::TrivialCongruence,
        Rule::GcdDividesKMinus1,
        Rule::RDivisibleByN,
        Rule::HFamily,
        Rule::TypeZTilde,
        Rule::TypeZTriviality,
        Rule::HFormShift,
        Rule::Sieradski,
        Rule::BlockReduction,
        Rule::GnQk,
        Rule::KEquals3,
        Rule::ShiftedGnQk,
        Rule::DeterminantOracle,
        Rule::CosetEnumeration,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::ExponentSum => "exponent-sum",
            Rule::TrivialCongruence => "trivial-congruence",
            Rule::GcdDividesKMinus1 => "gcd-divides-k-minus-1",
            Rule::RDivisibleByN => "r-divisible-by-n",
            Rule::HFamily => "h-family",
            Rule::TypeZTilde => "type-z-tilde",
            Rule::TypeZTriviality => "type-z-triviality",
            Rule::HFormShift => "h-form-shift",
            Rule::Sieradski => "sieradski",
            Rule::BlockReduction => "block-reduction",
            Rule::GnQk => "gn-q-k",
            Rule::KEquals3 => "k-equals-3",
            Rule::ShiftedGnQk => "shifted-gn-q-k",
            Rule::DeterminantOracle => "determinant-oracle",
            Rule::CosetEnumeration => "coset-enumeration",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Triviality {
    Yes,
    No,
    Unknown,
}

fn yes_no<S: Serializer>(v: &bool, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(if *v { "yes" } else { "no" })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(serialize_with = "yes_no")]
    pub perfect: bool,
    pub trivial: Triviality,
    /// The statement that settled perfectness.
    pub reason: Rule,
    /// Set when triviality was settled by a different statement than
    /// perfectness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_reason: Option<Rule>,
    /// The tuple the deciding statement was applied to. It is isomorphic to
    /// the input, or to a free factor of it, except after block reduction,
    /// which preserves perfectness only.
    pub normalized_params: TypeFParams,
}

impl Verdict {
    fn new(perfect: bool, trivial: Triviality, reason: Rule, at: TypeFParams) -> Self {
        debug_assert!(perfect || trivial != Triviality::Yes);
        Verdict {
            perfect,
            trivial,
            reason,
            trivial_reason: None,
            normalized_params: at,
        }
    }

    /// Perfect and trivial decided together.
    fn both(value: bool, reason: Rule, at: TypeFParams) -> Self {
        Self::new(value, if value { Triviality::Yes } else { Triviality::No }, reason, at)
    }

    /// Perfectness only; a non-perfect group is nontrivial.
    fn perfect_only(perfect: bool, reason: Rule, at: TypeFParams) -> Self {
        Self::new(
            perfect,
            if perfect { Triviality::Unknown } else { Triviality::No },
            reason,
            at,
        )
    }
}

fn pp_raw(r: u64, n: u64, k: u64, s: u64, q: u64) -> TypeFParams {
    TypeFParams {
        r,
        n,
        k,
        s,
        q,
        epsilon: Sign::Minus,
    }
}

fn abs_diff_is_one(a: u64, b: u64) -> bool {
    a.abs_diff(b) == 1
}

// ---------------------------------------------------------------------------
// necessary and sufficient conditions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Necessary {
    Fails(Rule),
    Passes,
}

pub fn perfect_necessary_conditions(p: &TypeFParams) -> Necessary {
    if p.exponent_sum().abs() != 1 {
        return Necessary::Fails(Rule::ExponentSum);
    }
    if p.is_prishchepov() && !(p.k - 1).is_multiple_of(p.n.gcd(&p.q)) {
        return Necessary::Fails(Rule::GcdDividesKMinus1);
    }
    Necessary::Passes
}

/// `|r - s| = 1` and (`k = 1` or `k = 1 + q(r - s)` mod `n`): the group is
/// trivial.
pub fn trivial_sufficient(p: &PrishchepovParams) -> bool {
    let (r, n, k, s, q) = (p.r as i128, p.n, p.k as i128, p.s as i128, p.q as i128);
    (r - s).abs() == 1 && (congruent(k, 1, n) || congruent(k, 1 + q * (r - s), n))
}

// ---------------------------------------------------------------------------
// named families

/// `H(r,n,s) = P(r,n,r+1,s,1)`: perfect iff trivial iff `|r - s| = 1` and
/// `n | r` or `n | s`.
pub fn classify_h(r: u64, n: u64, s: u64) -> Result<Verdict> {
    if n < 2 || r < 1 || s < 1 {
        return Err(hypothesis("h-family", format!("needs r, s >= 1 and n >= 2, got ({r},{n},{s})")));
    }
    let v = abs_diff_is_one(r, s) && (r.is_multiple_of(n) || s.is_multiple_of(n));
    Ok(Verdict::both(v, Rule::HFamily, pp_raw(r, n, r + 1, s, 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum LogClass {
    /// The `(n, r)`-torus knot group.
    TorusKnotGroup { n: u64, r: u64 },
    InfiniteCyclic,
    NotConnectedLog,
}

/// Which `H(r,n,s)` are connected LOG groups.
pub fn classify_log(r: u64, n: u64, s: u64) -> Result<LogClass> {
    if n < 2 || r < 1 || s < 1 {
        return Err(hypothesis("log", format!("needs r, s >= 1 and n >= 2, got ({r},{n},{s})")));
    }
    Ok(if r == s && n.gcd(&r) == 1 {
        LogClass::TorusKnotGroup { n, r }
    } else if gcd3(n, r, s) == 2 && (r.is_multiple_of(n) || s.is_multiple_of(n)) {
        LogClass::InfiniteCyclic
    } else {
        LogClass::NotConnectedLog
    })
}

fn require_coprime_triple(p: &TypeFParams, rule: &'static str) -> Result<()> {
    let g = gcd3(p.n, p.k - 1, p.q);
    if g != 1 {
        return Err(hypothesis(rule, format!("needs gcd(n, k-1, q) = 1, got {g} for {p}")));
    }
    Ok(())
}

/// Type Z-tilde with `gcd(n, k-1, q) = 1` and `r >= s`: perfect iff
/// `|r - s| = 1`, `gcd(n, q) = 1` and `gcd(k - 1 - qr, n) = 1`.
///
/// Triviality: a non-perfect group is nontrivial; for type Z it is decided by
/// [`classify_type_z_trivial`]; otherwise it is left unknown unless the
/// trivial congruences hold.
pub fn classify_type_z_tilde(p: &PrishchepovParams) -> Result<Verdict> {
    const RULE: &str = "type-z-tilde";
    require_coprime_triple(p, RULE)?;
    if !is_type_z_tilde(p) {
        return Err(hypothesis(RULE, format!("{p} is neither type Z nor type Z'")));
    }
    if p.r < p.s {
        return Err(hypothesis(RULE, format!("needs r >= s, got {p}")));
    }
    let c = p.k as i128 - 1 - p.q as i128 * p.r as i128;
    let perfect = abs_diff_is_one(p.r, p.s)
        && p.n.gcd(&p.q) == 1
        && (c.unsigned_abs() as u64 % p.n).gcd(&p.n) == 1;
    let mut v = Verdict::perfect_only(perfect, Rule::TypeZTilde, p.params());
    if perfect {
        if is_type_z(p) {
            v.trivial = type_z_trivial(p);
            v.trivial_reason = Some(Rule::TypeZTriviality);
        } else if trivial_sufficient(p) {
            v.trivial = Triviality::Yes;
            v.trivial_reason = Some(Rule::TrivialCongruence);
        }
    }
    Ok(v)
}

fn type_z_trivial(p: &PrishchepovParams) -> Triviality {
    if trivial_sufficient(p) {
        Triviality::Yes
    } else {
        Triviality::No
    }
}

/// Type Z with `gcd(n, k-1, q) = 1` and `r >= s`: trivial iff `|r - s| = 1`
/// and `k = 1` or `k = 1 + q(r - s)` mod `n`. Perfectness comes from
/// [`classify_type_z_tilde`].
pub fn classify_type_z_trivial(p: &PrishchepovParams) -> Result<Verdict> {
    const RULE: &str = "type-z-triviality";
    require_coprime_triple(p, RULE)?;
    if !is_type_z(p) {
        return Err(hypothesis(RULE, format!("{p} is not type Z")));
    }
    if p.r < p.s {
        return Err(hypothesis(RULE, format!("needs r >= s, got {p}")));
    }
    let mut v = classify_type_z_tilde(p)?;
    v.trivial = type_z_trivial(p);
    v.trivial_reason = Some(Rule::TypeZTriviality);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SieradskiClass {
    pub perfect: bool,
    pub infinite: bool,
}

/// `S(r,n) = P(r,n,2,r-1,2)`: perfect iff `gcd(4r - 2, n) = 1`; infinite iff
/// `n >= (4r - 2)/(2r - 3)`.
pub fn sieradski_classify(r: u64, n: u64) -> Result<SieradskiClass> {
    if r < 2 || n < 2 {
        return Err(hypothesis("sieradski", format!("needs r, n >= 2, got S({r},{n})")));
    }
    Ok(SieradskiClass {
        perfect: (4 * r - 2).gcd(&n) == 1,
        // 2r - 3 >= 1, so the comparison clears the denominator exactly
        infinite: n as u128 * (2 * r as u128 - 3) >= 4 * r as u128 - 2,
    })
}

/// `(alpha n + r, n, k, beta n + r - 1, q)` split into its block multiples and
/// the residual `(r, n, k, r - 1, q)` with `1 <= r <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockReduction {
    pub r: u64,
    pub n: u64,
    pub k: u64,
    pub q: u64,
    pub alpha: u64,
    pub beta: u64,
}

impl BlockReduction {
    /// The residual tuple, or `None` when `r = 1` (its relators are single
    /// generators and the group is trivial).
    pub fn reduced(&self) -> Option<PrishchepovParams> {
        (self.r >= 2).then(|| PrishchepovParams::new_unchecked(self.r, self.n, self.k, self.r - 1, self.q))
    }

    pub fn reduced_raw(&self) -> TypeFParams {
        pp_raw(self.r, self.n, self.k, self.r - 1, self.q)
    }

    /// `|(alpha - beta) n + 1|`, the ratio of abelianization orders.
    pub fn order_ratio(&self) -> u64 {
        ((self.alpha as i128 - self.beta as i128) * self.n as i128 + 1).unsigned_abs() as u64
    }
}

/// Perfect iff the order ratio is 1 and the residual tuple is perfect. The
/// ratio is 1 when `alpha = beta`, and also when `n = 2` and
/// `beta = alpha + 1`.
pub fn reduce_mod_n_blocks(p: &PrishchepovParams) -> Result<BlockReduction> {
    const RULE: &str = "block-reduction";
    require_coprime_triple(p, RULE)?;
    let n = p.n;
    let r = (p.r - 1) % n + 1;
    let alpha = (p.r - r) / n;
    if p.s + 1 < r || !(p.s + 1 - r).is_multiple_of(n) {
        return Err(hypothesis(
            RULE,
            format!("{p}: s + 1 - r is not a nonnegative multiple of n above r mod n"),
        ));
    }
    Ok(BlockReduction {
        r,
        n,
        k: p.k,
        q: p.q,
        alpha,
        beta: (p.s + 1 - r) / n,
    })
}

fn gn_clause(n: u64, q: u64, k: u64) -> (bool, bool) {
    let (k, q) = (k as i128, q as i128);
    let trivial = congruent(k, 1, n) || congruent(k, 1 + q, n);
    let z = n.gcd(&6) == 1 && congruent(q, 2 * (k - 1), n);
    (trivial || z, trivial)
}

/// `G_n(q, k - 1) = P(2,n,k,1,q)` with `gcd(n, q, k-1) = 1`: perfect iff
/// (`gcd(n,6) = 1` and `q = 2(k-1)`) or `k = 1` or `k = 1 + q` mod `n`.
pub fn classify_gn_qk(n: u64, q: u64, k: u64) -> Result<Verdict> {
    let at = pp_raw(2, n, k, 1, q);
    at.validate()?;
    require_coprime_triple(&at, "gn-q-k")?;
    let (perfect, trivial) = gn_clause(n, q, k);
    let mut v = Verdict::perfect_only(perfect, Rule::GnQk, at);
    if trivial {
        v.trivial = Triviality::Yes;
        v.trivial_reason = Some(Rule::TrivialCongruence);
    }
    Ok(v)
}

/// `P(r,n,3,r-1,1)`: perfect iff (`gcd(6,n) = 1` and `2r = 1`) or `r = 0` or
/// `r = 1` mod `n`. For `r = 1` the relators are the generators themselves.
pub fn classify_p_r_n_3(r: u64, n: u64) -> Result<Verdict> {
    if n < 2 || r < 1 {
        return Err(hypothesis("k-equals-3", format!("needs n >= 2, r >= 1, got ({r},{n})")));
    }
    let perfect = (n.gcd(&6) == 1 && congruent(2 * r as i128, 1, n)) || r.is_multiple_of(n) || r % n == 1 % n;
    let at = pp_raw(r, n, 3, r - 1, 1);
    let mut v = Verdict::perfect_only(perfect, Rule::KEquals3, at);
    if r == 1 || (r >= 2 && trivial_sufficient(&PrishchepovParams::new_unchecked(r, n, 3, r - 1, 1))) {
        v.trivial = Triviality::Yes;
        v.trivial_reason = Some(Rule::TrivialCongruence);
    }
    Ok(v)
}

/// `P(alpha n + 2, n, k, beta n + 1, q)` with `gcd(n, k-1, q) = 1`: perfect
/// iff `|(alpha - beta) n + 1| = 1` and `G_n(q, k-1)` is perfect, trivial iff
/// moreover `k = 1` or `k = 1 + q` mod `n`.
///
/// The ratio condition means `alpha = beta`, except for `n = 2` where
/// `beta = alpha + 1` also qualifies; those groups have `r - s = -1` and
/// `k = 1 - q` mod 2 and are trivial by the congruence criterion.
pub fn classify_shifted_gn_qk(n: u64, k: u64, q: u64, alpha: u64, beta: u64) -> Result<Verdict> {
    let at = pp_raw(alpha * n + 2, n, k, beta * n + 1, q);
    at.validate()?;
    require_coprime_triple(&at, "shifted-gn-q-k")?;
    let (perfect, trivial) = gn_clause(n, q, k);
    let unit_ratio = alpha == beta || (n == 2 && beta == alpha + 1);
    let t = if unit_ratio && trivial { Triviality::Yes } else { Triviality::No };
    Ok(Verdict::new(unit_ratio && perfect, t, Rule::ShiftedGnQk, at))
}

// ---------------------------------------------------------------------------
// the dispatcher

/// Exact test of `|det| = 1` for the relation circulant.
pub fn determinant_oracle(p: &TypeFParams) -> bool {
    modular::is_unit_fast(&representer_polynomial(p), p.n as usize)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    /// Settle unknown triviality by coset enumeration with these options.
    pub enumerate: Option<EnumerationOptions>,
}

pub fn classify(p: &TypeFParams) -> Verdict {
    classify_with(p, &ClassifyOptions::default())
}

pub fn classify_with(p: &TypeFParams, opts: &ClassifyOptions) -> Verdict {
    let mut v = decide(p);
    if let (Triviality::Unknown, Some(eo)) = (v.trivial, opts.enumerate) {
        let pres = cosetenum::presentation_from_params(&v.normalized_params);
        match cosetenum::todd_coxeter(&pres, &eo).status {
            EnumerationStatus::Complete(m) => {
                v.trivial = if m == 1 { Triviality::Yes } else { Triviality::No };
                v.trivial_reason = Some(Rule::CosetEnumeration);
            }
            EnumerationStatus::Exceeded(_) => {}
        }
    }
    v
}

fn decide(p: &TypeFParams) -> Verdict {
    let orig = *p;
    if let Necessary::Fails(rule) = perfect_necessary_conditions(p) {
        return Verdict::both(false, rule, orig);
    }
    let p = p.as_prishchepov().expect("exponent sum 1 forces epsilon = -1");
    let (n, q) = (p.n, p.q);

    // H(r,n,s) itself
    if q % n == 1 % n && congruent(p.k as i128, p.r as i128 + 1, n) {
        return classify_h(p.r, n, p.s).expect("valid params");
    }
    if congruent(p.k as i128, (q * p.r) as i128 + 1, n) {
        return Verdict::both(trivial_sufficient(&p), Rule::HFormShift, orig);
    }
    if trivial_sufficient(&p) {
        return Verdict::both(true, Rule::TrivialCongruence, orig);
    }

    // free factor: gcd(N, Q, K - 1) = 1, and N >= 2 since n | k - 1 would have
    // been caught above
    let f1 = free_product_decompose(&p).factor;
    if trivial_sufficient(&f1) {
        return Verdict::both(true, Rule::TrivialCongruence, f1.params());
    }
    if f1.n.gcd(&f1.q) != 1 {
        return Verdict::both(false, Rule::GcdDividesKMinus1, f1.params());
    }
    let f2 = if f1.r < f1.s { swap_r_s(&f1) } else { f1 };
    let f3 = reduce_q_to_one(&f2).expect("gcd(N, Q) = 1");
    if trivial_sufficient(&f3) {
        return Verdict::both(true, Rule::TrivialCongruence, f3.params());
    }
    let big_n = f3.n;
    // f3 = P(r, N, K, r - 1, 1) with K not 1 or 2 mod N
    if congruent(f3.k as i128, f3.r as i128 + 1, big_n) {
        return classify_h(f3.r, big_n, f3.s).expect("valid params");
    }
    let blocks = reduce_mod_n_blocks(&f3).expect("s = r - 1 and gcd(N, K-1, 1) = 1");
    if blocks.r == big_n {
        return Verdict::perfect_only(true, Rule::RDivisibleByN, f3.params());
    }
    if blocks.r == 1 {
        return Verdict::perfect_only(true, Rule::BlockReduction, f3.params());
    }
    let f4 = blocks.reduced().expect("2 <= r < N");
    if is_type_z(&f3) {
        // f3 is a q-reduction of S(r, N) with N odd
        let s = sieradski_classify(f3.r, big_n).expect("r, N >= 2");
        // nontrivial by the type Z triviality criterion
        let mut v = Verdict::new(s.perfect, Triviality::No, Rule::Sieradski, f3.params());
        if s.perfect {
            v.trivial_reason = Some(Rule::TypeZTriviality);
        }
        return v;
    }
    if blocks.r == 2 {
        let rule = if blocks.alpha == 0 { Rule::GnQk } else { Rule::ShiftedGnQk };
        let (perfect, _) = gn_clause(big_n, 1, f3.k);
        return Verdict::perfect_only(perfect, rule, f3.params());
    }
    if residue(f3.k as i128, big_n) == 3 % big_n {
        let v = classify_p_r_n_3(f3.r, big_n).expect("valid params");
        return Verdict { normalized_params: f3.params(), ..v };
    }
    if is_type_z_prime(&f3) {
        return classify_type_z_tilde(&f3).expect("type Z' with r > s and q = 1");
    }
    Verdict::perfect_only(determinant_oracle(&f4), Rule::DeterminantOracle, f3.params())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(r: u64, n: u64, k: u64, s: u64, q: u64) -> PrishchepovParams {
        PrishchepovParams::new(r, n, k, s, q).unwrap()
    }

    #[test]
    fn necessary_conditions() {
        let t = |r, s, e| TypeFParams::new(r, 5, 1, s, 1, e).unwrap();
        assert_eq!(perfect_necessary_conditions(&t(3, 3, Sign::Minus)), Necessary::Fails(Rule::ExponentSum));
        assert_eq!(perfect_necessary_conditions(&t(2, 1, Sign::Plus)), Necessary::Fails(Rule::ExponentSum));
        assert_eq!(
            perfect_necessary_conditions(&pp(2, 6, 4, 1, 2)),
            Necessary::Fails(Rule::GcdDividesKMinus1)
        );
        assert_eq!(perfect_necessary_conditions(&pp(2, 5, 2, 1, 2)), Necessary::Passes);
    }

    #[test]
    fn sufficient_triviality() {
        assert!(trivial_sufficient(&pp(3, 5, 1, 2, 1)));
        assert!(trivial_sufficient(&pp(3, 5, 2, 2, 1)));
        assert!(!trivial_sufficient(&pp(3, 5, 3, 2, 1)));
        assert!(trivial_sufficient(&pp(2, 3, 1, 3, 2)));
        // r < s: 1 + q(r - s) = 1 - q
        assert!(trivial_sufficient(&pp(2, 7, 5, 3, 3)));
    }

    #[test]
    fn h_examples() {
        let v = classify_h(4, 4, 3).unwrap();
        assert!(v.perfect && v.trivial == Triviality::Yes);
        assert!(!classify_h(3, 5, 2).unwrap().perfect);
        assert!(classify_h(2, 2, 1).unwrap().perfect);
        assert!(classify_h(2, 1, 1).is_err());
    }

    #[test]
    fn log_examples() {
        assert_eq!(classify_log(3, 7, 3).unwrap(), LogClass::TorusKnotGroup { n: 7, r: 3 });
        assert_eq!(classify_log(4, 4, 2).unwrap(), LogClass::InfiniteCyclic);
        assert_eq!(classify_log(2, 4, 1).unwrap(), LogClass::NotConnectedLog);
    }

    #[test]
    fn type_z_tilde_examples() {
        assert!(classify_type_z_tilde(&pp(3, 7, 2, 2, 2)).unwrap().perfect);
        assert!(!classify_type_z_tilde(&pp(2, 3, 2, 1, 2)).unwrap().perfect);
        let v = classify_type_z_tilde(&pp(3, 5, 3, 2, 1)).unwrap();
        assert!(v.perfect);
        assert_eq!(v.trivial, Triviality::Unknown);
        // neither type
        assert!(classify_type_z_tilde(&pp(2, 7, 4, 1, 1)).is_err());
        // r < s
        assert!(classify_type_z_tilde(&pp(1, 5, 4, 2, 2)).is_err());
        // gcd(n, k-1, q) = 2
        assert!(classify_type_z_tilde(&pp(2, 4, 3, 1, 2)).is_err());
    }

    #[test]
    fn type_z_triviality_examples() {
        let v = classify_type_z_trivial(&pp(2, 3, 2, 1, 2)).unwrap();
        assert_eq!(v.trivial, Triviality::No);
        let v = classify_type_z_trivial(&pp(2, 5, 2, 1, 2)).unwrap();
        assert!(v.perfect);
        assert_eq!(v.trivial, Triviality::No);
        // trivial by the congruence, but outside type Z
        assert!(classify_type_z_trivial(&pp(2, 2, 1, 1, 1)).is_err());
        let v = classify(&pp(2, 2, 1, 1, 1));
        assert_eq!(v.trivial, Triviality::Yes);
    }

    #[test]
    fn sieradski_examples() {
        assert_eq!(sieradski_classify(2, 5).unwrap(), SieradskiClass { perfect: true, infinite: false });
        assert_eq!(sieradski_classify(3, 7).unwrap(), SieradskiClass { perfect: true, infinite: true });
        assert_eq!(sieradski_classify(2, 6).unwrap(), SieradskiClass { perfect: false, infinite: true });
        assert!(sieradski_classify(1, 6).is_err());
    }

    #[test]
    fn block_examples() {
        let b = reduce_mod_n_blocks(&pp(7, 5, 3, 6, 1)).unwrap();
        assert_eq!((b.r, b.alpha, b.beta), (2, 1, 1));
        assert_eq!(b.reduced().unwrap(), pp(2, 5, 3, 1, 1));
        let b = reduce_mod_n_blocks(&pp(7, 5, 3, 1, 1)).unwrap();
        assert_eq!((b.alpha, b.beta), (1, 0));
        assert_eq!(b.order_ratio(), 6);
        assert!(reduce_mod_n_blocks(&pp(7, 5, 3, 3, 1)).is_err());
        assert!(reduce_mod_n_blocks(&pp(7, 5, 1, 1, 5)).is_err());
    }

    #[test]
    fn gn_examples() {
        assert!(classify_gn_qk(5, 2, 2).unwrap().perfect);
        let v = classify_gn_qk(6, 1, 2).unwrap();
        assert!(v.perfect);
        assert_eq!(v.trivial, Triviality::Yes);
        assert!(!classify_gn_qk(7, 1, 3).unwrap().perfect);
        assert!(classify_gn_qk(6, 2, 3).is_err());
    }

    #[test]
    fn k3_examples() {
        assert!(classify_p_r_n_3(3, 5).unwrap().perfect);
        let v = classify_p_r_n_3(1, 7).unwrap();
        assert!(v.perfect);
        assert_eq!(v.trivial, Triviality::Yes);
        assert!(!classify_p_r_n_3(2, 5).unwrap().perfect);
    }

    #[test]
    fn shifted_gn_examples() {
        let v = classify_shifted_gn_qk(5, 2, 2, 0, 0).unwrap();
        assert!(v.perfect);
        assert_eq!(v.trivial, Triviality::No);
        let v = classify_shifted_gn_qk(7, 1, 1, 1, 1).unwrap();
        assert_eq!(v.trivial, Triviality::Yes);
        let v = classify_shifted_gn_qk(7, 1, 1, 1, 0).unwrap();
        assert!(!v.perfect);
        assert_eq!(v.trivial, Triviality::No);
        // n = 2 with beta = alpha + 1 has order ratio 1
        for (k, q) in [(1, 1), (2, 1), (2, 2)] {
            let v = classify_shifted_gn_qk(2, k, q, 0, 1).unwrap();
            let direct = crate::zpoly::ab_order(&pp(2, 2, k, 3, q).params()).is_one();
            assert_eq!(v.perfect, direct, "k={k} q={q}");
            assert_eq!(v.trivial == Triviality::Yes, direct);
        }
    }

    #[test]
    fn dispatcher_examples() {
        let v = classify(&pp(2, 5, 2, 1, 2));
        assert!(v.perfect);
        assert!(matches!(v.reason, Rule::TypeZTilde | Rule::Sieradski));
        assert_eq!(v.trivial, Triviality::No);
        let v = classify(&TypeFParams::new(3, 3, 2, 3, 1, Sign::Minus).unwrap());
        assert!(!v.perfect);
        assert_eq!(v.reason, Rule::ExponentSum);
        let v = classify(&pp(2, 7, 4, 1, 1));
        assert!(!v.perfect);
        assert!(matches!(v.reason, Rule::DeterminantOracle | Rule::GnQk));
    }

    #[test]
    fn json_shape() {
        let v = classify(&pp(2, 5, 2, 1, 2));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["perfect"], "yes");
        assert_eq!(j["trivial"], "no");
        assert_eq!(j["reason"], "sieradski");
        assert_eq!(j["normalized_params"]["n"], 5);
    }

    #[test]
    fn enumeration_settles_unknowns() {
        let p = pp(3, 5, 3, 2, 1);
        assert_eq!(classify(&p).trivial, Triviality::Unknown);
        let opts = ClassifyOptions {
            enumerate: Some(EnumerationOptions::default()),
        };
        let v = classify_with(&p, &opts);
        assert_eq!(v.trivial, Triviality::Yes);
        assert_eq!(v.trivial_reason, Some(Rule::CosetEnumeration));
    }

    #[test]
    fn agrees_with_oracle_small_grid() {
        for n in 2..=9u64 {
            for r in 1..=2 * n + 2 {
                for s in 1..=2 * n + 2 {
                    for k in 1..=n {
                        for q in 1..=n {
                            let p = pp(r, n, k, s, q);
                            let v = classify(&p);
                            assert_eq!(v.perfect, determinant_oracle(&p), "{p}: {v:?}");
                        }
                    }
                }
            }
        }
    }
}
