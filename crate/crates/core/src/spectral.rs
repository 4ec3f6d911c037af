//! Floating-point evaluation of representer polynomials at roots of unity.
//!
//! Nothing here decides a classification; these values cross-check the exact
//! pipeline in [`crate::zpoly`]. Roots of unity are produced from exact angles
//! `2 pi j / n` rather than by repeated multiplication.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{hypothesis, Error, Result};
use crate::params::PrishchepovParams;
use crate::zpoly::{representer_polynomial, IntPoly};

/// `exp(2 pi i j / n)`.
pub fn root_of_unity(j: i64, n: u64) -> Complex64 {
    let j = j.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, TAU * j / n as f64)
}

/// `f(exp(2 pi i j / n))`, summing `c_i exp(2 pi i ij / n)` term by term.
fn eval_at_root(f: &IntPoly, j: i64, n: u64) -> Complex64 {
    f.to_i64s()
        .expect("representer coefficients fit in i64")
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, &c)| root_of_unity(j * i as i64, n) * c as f64)
        .sum()
}

/// `F(t) = sum_{i<s} t^{iq}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeomSum {
    pub s: u64,
    pub q: u64,
}

impl GeomSum {
    pub fn at_one(&self) -> u64 {
        self.s
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let step = z.powu(self.q as u32);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for _ in 0..self.s {
            acc += term;
            term *= step;
        }
        acc
    }

    /// Value at `exp(2 pi i j / n)` with every power taken from its exact angle.
    pub fn eval_root(&self, j: i64, n: u64) -> Complex64 {
        (0..self.s as i64)
            .map(|i| root_of_unity(j * i * self.q as i64, n))
            .sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralFactor {
    /// `lambda = exp(2 pi i j / n)`.
    pub j: u64,
    pub real: bool,
    /// `f(lambda)` when `lambda` is real, otherwise `f(lambda) f(conj lambda)`.
    pub l_value: f64,
    /// `l_value - 1`.
    pub script_f: f64,
}

/// One factor per conjugate pair of `n`-th roots of unity.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralFactorization {
    pub n: u64,
    pub factors: Vec<SpectralFactor>,
}

impl SpectralFactorization {
    /// Signed product; its absolute value approximates `|P^ab|`.
    pub fn product(&self) -> f64 {
        self.factors.iter().map(|f| f.l_value).product()
    }

    pub fn min_abs_factor(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.l_value.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn spectral_factorization(p: &PrishchepovParams) -> SpectralFactorization {
    let f = representer_polynomial(p);
    let n = p.n;
    let factors = (0..=n / 2)
        .map(|j| {
            let real = j == 0 || 2 * j == n;
            let v = eval_at_root(&f, j as i64, n);
            let l_value = if real { v.re } else { v.norm_sqr() };
            SpectralFactor {
                j,
                real,
                l_value,
                script_f: l_value - 1.0,
            }
        })
        .collect();
    SpectralFactorization { n, factors }
}

/// The two-term expansion of `f(lambda) f(conj lambda) - 1` valid when
/// `r = s + 1`:
///
/// `2 F(l) F(conj l) [1 - Re(l^{k-1})] + 2 Re(conj(l)^q F(conj l) [1 - l^{k-1}])`
///
/// with `F(t) = sum_{i<s} t^{iq}` and `lambda = exp(2 pi i j / n)` nonreal.
pub fn script_f_expansion(p: &PrishchepovParams, j: u64) -> Result<f64> {
    if p.r != p.s + 1 {
        return Err(hypothesis("script-f-expansion", format!("needs r = s + 1, got {p}")));
    }
    let n = p.n;
    let j = j % n;
    if j == 0 || 2 * j == n {
        return Err(Error::Numeric(format!("lambda = exp(2 pi i {j}/{n}) is real")));
    }
    let (ji, k1, q) = (j as i64, (p.k - 1) as i64, p.q as i64);
    let geom = GeomSum { s: p.s, q: p.q };
    let f_l = geom.eval_root(ji, n);
    let f_lbar = geom.eval_root(-ji, n);
    let l_k1 = root_of_unity(ji * k1, n);
    let lbar_q = root_of_unity(-ji * q, n);
    let first = 2.0 * (f_l * f_lbar).re * (1.0 - l_k1.re);
    let second = 2.0 * (lbar_q * f_lbar * (Complex64::new(1.0, 0.0) - l_k1)).re;
    Ok(first + second)
}

/// `|f(lambda) f(conj lambda) - 1|` computed directly, for comparison with
/// [`script_f_expansion`].
pub fn script_f_direct(p: &PrishchepovParams, j: u64) -> f64 {
    let f = representer_polynomial(p);
    eval_at_root(&f, j as i64, p.n).norm_sqr() - 1.0
}

/// `|Re(z F(z) (1 - conj(z)^r))|` for `F(t) = 1 + t + ... + t^{r-2}`; zero for
/// every `z` on the unit circle.
pub fn unit_circle_residual(r: u64, z: Complex64) -> Result<f64> {
    const TOL: f64 = 1e-9;
    if (z.norm() - 1.0).abs() > TOL {
        return Err(Error::Numeric(format!("|z| = {} is not 1", z.norm())));
    }
    let big_f = GeomSum {
        s: r.saturating_sub(1),
        q: 1,
    }
    .eval(z);
    let tail = Complex64::new(1.0, 0.0) - z.conj().powu(r as u32);
    Ok((z * big_f * tail).re.abs())
}

/// `max(1, |f(lambda)|^2)`, the scale used when comparing the expansion with
/// the direct value.
pub fn expansion_scale(p: &PrishchepovParams, j: u64) -> f64 {
    let f = representer_polynomial(p);
    eval_at_root(&f, j as i64, p.n).norm_sqr().max(1.0)
}
