//! Abelianizations of cyclically presented groups.
//!
//! If `c_i` is the exponent sum of `x_i` in the defining word `w`, the relation
//! matrix of `G_n(w)^ab` is the circulant with first row `(c_0, ..., c_{n-1})`,
//! and the abelianization is the additive group of `Z[t]/<f(t), t^n - 1>` for
//! the representer polynomial `f(t) = sum c_i t^i`. Its order is
//! `|prod_{lambda^n = 1} f(lambda)| = |Res(t^n - 1, f)|` when nonzero.

mod int;
pub(crate) mod linalg;
pub mod modular;
mod poly;
mod resultant;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::params::{Sign, TypeFParams};

pub use poly::IntPoly;
pub use resultant::{resultant, sylvester_matrix};

pub(crate) use poly::json_int;

/// The `f(t)` of a type-F presentation: exponent sums of the relator with
/// `j = 0`, as a polynomial of degree `< n`.
pub fn representer_polynomial(p: &TypeFParams) -> IntPoly {
    let n = p.n as usize;
    let mut c = vec![0i64; n];
    let q = (p.q % p.n) as usize;
    let k1 = ((p.k - 1) % p.n) as usize;
    for i in 0..p.r as usize {
        c[(i * q) % n] += 1;
    }
    let eps = p.epsilon.as_i64();
    for i in 0..p.s as usize {
        c[(k1 + i * q) % n] += eps;
    }
    IntPoly::from_i64s(&c)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circulant {
    n: usize,
    first_row: Vec<BigInt>,
}

impl Circulant {
    pub fn new(first_row: Vec<BigInt>) -> Self {
        assert!(!first_row.is_empty(), "circulant needs n >= 1");
        Circulant {
            n: first_row.len(),
            first_row,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_row(&self) -> &[BigInt] {
        &self.first_row
    }

    /// Row `j` is the first row shifted right by `j`.
    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.first_row[(col + self.n - row % self.n) % self.n]
    }

    pub fn dense(&self) -> Vec<BigInt> {
        let n = self.n;
        (0..n * n).map(|x| self.entry(x / n, x % n).clone()).collect()
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.first_row.clone())
    }
}

/// Wraps `f` mod `t^n - 1` into the first row of an `n x n` circulant.
pub fn circulant_from_poly(f: &IntPoly, n: usize) -> Circulant {
    let reduced = f.reduce_mod_xn_minus_one(n);
    let mut row = reduced.into_coeffs();
    row.resize(n, BigInt::zero());
    Circulant::new(row)
}

/// Exact signed determinant by fraction-free elimination.
pub fn circulant_determinant(c: &Circulant) -> BigInt {
    linalg::determinant(c.n, &c.dense())
}

/// Whether `|det| = 1`. A determinant mod a large prime outside `{1, -1}`
/// settles it; otherwise the exact determinant is computed.
pub fn circulant_is_unit(c: &Circulant) -> bool {
    if let Some(small) = c.first_row.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() {
        let n = c.n;
        let dense: Vec<i64> = (0..n * n).map(|x| small[(x % n + n - x / n) % n]).collect();
        let d = modular::det_mod_p(n, &dense, modular::FILTER_PRIME);
        if d != 1 && d != modular::FILTER_PRIME - 1 {
            return false;
        }
    }
    circulant_determinant(c).abs().is_one()
}

/// Signed `Res(t^n - 1, f) = prod_{lambda^n = 1} f(lambda)`, which equals the
/// determinant of `circulant_from_poly(f, n)`.
pub fn resultant_signed(f: &IntPoly, n: usize) -> BigInt {
    resultant(&IntPoly::x_n_minus_one(n), f)
}

/// `|Res(f, t^n - 1)|`.
pub fn resultant_order(f: &IntPoly, n: usize) -> BigInt {
    resultant_signed(f, n).abs()
}

/// Invariant factors `d_1 | d_2 | ... | d_m` (all `>= 2`) and free rank of a
/// finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    #[serde(with = "json_int::vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn order(&self) -> AbOrder {
        if self.free_rank > 0 {
            AbOrder::Infinite
        } else {
            AbOrder::Finite(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Smith normal form of the relation matrix, read as an abelian group.
pub fn smith_normal_form(c: &Circulant) -> AbelianInvariants {
    let diag = linalg::smith_normal_form(c.n, c.n, &c.dense());
    AbelianInvariants {
        free_rank: c.n - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AbOrder {
    Finite(BigInt),
    Infinite,
}

impl AbOrder {
    pub fn is_one(&self) -> bool {
        matches!(self, AbOrder::Finite(n) if n.is_one())
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            AbOrder::Finite(n) => Some(n),
            AbOrder::Infinite => None,
        }
    }
}

impl fmt::Display for AbOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbOrder::Finite(n) => write!(f, "{n}"),
            AbOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for AbOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AbOrder::Finite(n) => json_int::serialize(n, s),
            AbOrder::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Order of `G^ab` for the presentation with parameters `p`.
pub fn ab_order(p: &TypeFParams) -> AbOrder {
    let f = representer_polynomial(p);
    order_from_det(circulant_determinant(&circulant_from_poly(&f, p.n as usize)))
}

pub(crate) fn order_from_det(det: BigInt) -> AbOrder {
    if det.is_zero() {
        AbOrder::Infinite
    } else {
        AbOrder::Finite(det.abs())
    }
}

/// Full abelian invariants of `G^ab`.
pub fn abelian_invariants(p: &TypeFParams) -> AbelianInvariants {
    let f = representer_polynomial(p);
    smith_normal_form(&circulant_from_poly(&f, p.n as usize))
}

/// `u * f + v * (t^n - 1) = 1` over `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitCertificate {
    pub u: IntPoly,
    pub v: IntPoly,
}

impl UnitCertificate {
    pub fn verify(&self, f: &IntPoly, n: usize) -> bool {
        &(&self.u * f) + &(&self.v * &IntPoly::x_n_minus_one(n)) == IntPoly::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitTest {
    pub unit: bool,
    pub certificate: Option<UnitCertificate>,
}

/// Whether `f` is a unit of `Z[t]/<t^n - 1>`, i.e. `Z[t]/<f, t^n - 1>` is the
/// zero ring. Decided by `|Res| = 1`; units come with a Bezout certificate.
pub fn is_unit_in_quotient(f: &IntPoly, n: usize) -> UnitTest {
    let unit = resultant_order(f, n).is_one();
    UnitTest {
        unit,
        certificate: if unit { bezout_certificate(f, n) } else { None },
    }
}

type QPoly = Vec<BigRational>;

fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_sub_scaled_shift(a: &mut QPoly, b: &QPoly, c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (j, bc) in b.iter().enumerate() {
        a[j + shift] -= c * bc;
    }
    q_trim(a);
}

/// Extended Euclid over `Q`. For a unit, the resulting cofactors are integral.
fn bezout_certificate(f: &IntPoly, n: usize) -> Option<UnitCertificate> {
    let to_q = |p: &IntPoly| -> QPoly {
        p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let m = IntPoly::x_n_minus_one(n);
    // invariant: r0 = s0 * f + t0 * m, r1 = s1 * f + t1 * m
    let (mut r0, mut r1) = (to_q(f), to_q(&m));
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], vec![]);
    let (mut t0, mut t1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
    q_trim(&mut r0);
    while !r1.is_empty() {
        // r0 <- r0 mod r1, carrying cofactors along
        let lead = r1.last().unwrap().clone();
        while r0.len() >= r1.len() {
            let shift = r0.len() - r1.len();
            let c = r0.last().unwrap() / &lead;
            q_sub_scaled_shift(&mut r0, &r1, &c, shift);
            q_sub_scaled_shift(&mut s0, &s1, &c, shift);
            q_sub_scaled_shift(&mut t0, &t1, &c, shift);
        }
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut t0, &mut t1);
    }
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    let to_int = |p: &QPoly| -> Option<IntPoly> {
        p.iter()
            .map(|c| {
                let x = c / &g;
                x.is_integer().then(|| x.to_integer())
            })
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    };
    let cert = UnitCertificate {
        u: to_int(&s0)?,
        v: to_int(&t0)?,
    };
    cert.verify(f, n).then_some(cert)
}

/// The `epsilon = -1` specialisation used throughout: `sum_{i<r} t^{iq} -
/// t^{k-1} sum_{i<s} t^{iq}` reduced mod `t^n - 1`.
pub fn prishchepov_polynomial(r: u64, n: u64, k: u64, s: u64, q: u64) -> IntPoly {
    representer_polynomial(&TypeFParams {
        r,
        n,
        k,
        s,
        q,
        epsilon: Sign::Minus,
    })
}
