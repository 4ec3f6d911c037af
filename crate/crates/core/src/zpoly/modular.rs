//! Residues of `Res(t^n - 1, f)` modulo word-size primes.
//!
//! A residue outside `{1, p - 1}` proves `|Res| != 1` outright. Otherwise the
//! residues are accumulated until the product of the primes exceeds twice the
//! Hadamard bound, which pins the resultant down exactly. This is the fast
//! route used by long sweeps; its answers are exact, not probabilistic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPoly;

/// Primes just below 2^32, so that products of residues fit in a `u64`.
/// Every modulus in this module is below 2^32.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 31..1u64 << 32).rev().filter(|&c| c % 2 == 1 && is_prime(c))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 << 32 {
        a % m * (b % m) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// `Res(t^n - 1, f) mod p` by the Euclidean algorithm over `F_p`.
///
/// `f` is given by its coefficients reduced mod `t^n - 1` (so `f.len() <= n`).
pub fn resultant_mod_p(f: &[i64], n: usize, p: u64) -> u64 {
    // both operands are kept with p < 2^32, so a*b < 2^64
    let reduce = |c: i64| c.rem_euclid(p as i64) as u64;
    let mut a: Vec<u64> = vec![0; n + 1];
    a[0] = p - 1;
    a[n] = 1;
    let mut b: Vec<u64> = f.iter().map(|&c| reduce(c)).collect();
    trim(&mut b);
    let mut acc: u64 = 1;
    loop {
        if b.is_empty() {
            return 0;
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        let lb = b[db];
        if db == 0 {
            return acc * pow_mod(lb, da as u64, p) % p;
        }
        // a mod b, in place
        let inv = pow_mod(lb, p - 2, p);
        for i in (db..=da).rev() {
            let c = a[i] * inv % p;
            if c == 0 {
                continue;
            }
            for (x, &y) in a[i - db..=i].iter_mut().zip(&b) {
                *x = (*x + p - y * c % p) % p;
            }
        }
        a.truncate(db);
        trim(&mut a);
        if a.is_empty() {
            return 0;
        }
        let dr = a.len() - 1;
        if (da * db) % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = acc * pow_mod(lb, (da - dr) as u64, p) % p;
        std::mem::swap(&mut a, &mut b);
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Hadamard bound `||f||^n` on `|Res(t^n - 1, f)|`, the determinant of the
/// circulant with first row `f`.
fn hadamard_bound(f: &[i64], n: usize) -> BigUint {
    let norm2: BigUint = f.iter().map(|&c| BigUint::from(c.unsigned_abs()).pow(2)).sum();
    // ||f||^n <= (||f||^2)^ceil(n/2)
    norm2.pow(n.div_ceil(2) as u32)
}

fn small_coeffs(f: &IntPoly, n: usize) -> Option<Vec<i64>> {
    f.reduce_mod_xn_minus_one(n).to_i64s()
}

/// Exact `Res(t^n - 1, f)` by Chinese remaindering.
pub fn resultant_multimodular(f: &IntPoly, n: usize) -> Option<BigInt> {
    let c = small_coeffs(f, n)?;
    let bound = BigInt::from(hadamard_bound(&c, n));
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    for p in primes() {
        let r = BigInt::from(resultant_mod_p(&c, n, p));
        let pb = BigInt::from(p);
        // value' = value + modulus * ((r - value) * modulus^-1 mod p)
        let m_mod_p = (&modulus % &pb).to_u64().unwrap();
        let inv = pow_mod(m_mod_p, p - 2, p);
        let diff = ((&r - &value) % &pb + &pb) % &pb;
        let t = diff.to_u64().unwrap() as u128 * inv as u128 % p as u128;
        value += &modulus * BigInt::from(t);
        modulus *= &pb;
        if modulus > &bound * 2 {
            break;
        }
    }
    // symmetric representative
    if &value * 2 > modulus {
        value -= &modulus;
    }
    Some(value)
}

/// Decides `|Res(t^n - 1, f)| = 1` exactly. Most non-units are rejected by the
/// first prime.
pub fn is_unit_fast(f: &IntPoly, n: usize) -> bool {
    let Some(c) = small_coeffs(f, n) else {
        return super::resultant_order(f, n).is_one();
    };
    let target = BigInt::from(hadamard_bound(&c, n)) * 2 + 2;
    let mut modulus = BigInt::one();
    let mut sign: Option<bool> = None;
    for p in primes() {
        let r = resultant_mod_p(&c, n, p);
        let neg = if r == 1 {
            false
        } else if r == p - 1 {
            true
        } else {
            return false;
        };
        if *sign.get_or_insert(neg) != neg {
            return false;
        }
        modulus *= BigInt::from(p);
        // Res = +-1 mod M with |Res| <= bound < M/2 - 1 forces Res = +-1
        if modulus > target {
            return true;
        }
    }
    unreachable!("prime supply exhausted")
}

/// `|Res|` as reported by [`resultant_multimodular`]; used by tests.
pub fn order_multimodular(f: &IntPoly, n: usize) -> Option<BigInt> {
    resultant_multimodular(f, n).map(|r| r.abs())
}

/// Determinant of a square matrix over `F_p` by Gaussian elimination.
pub fn det_mod_p(rows: usize, data: &[i64], p: u64) -> u64 {
    let mut m: Vec<u64> = data.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let mut det = 1u64;
    for k in 0..rows {
        let Some(piv) = (k..rows).find(|&i| m[i * rows + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..rows {
                m.swap(piv * rows + j, k * rows + j);
            }
            det = (p - det) % p;
        }
        let pk = m[k * rows + k];
        det = mul_mod(det, pk, p);
        let inv = pow_mod(pk, p - 2, p);
        for i in k + 1..rows {
            let c = mul_mod(m[i * rows + k], inv, p);
            if c == 0 {
                continue;
            }
            for j in k + 1..rows {
                let sub = mul_mod(c, m[k * rows + j], p);
                m[i * rows + j] = (m[i * rows + j] + p - sub) % p;
            }
        }
    }
    det
}

/// The prime used by single-prime filters.
pub const FILTER_PRIME: u64 = 4294967291;

/// `F_p` with a primitive `n`-th root of unity, `p = 1 mod n`.
///
/// Over such a field the circulant with first row `c` is diagonalized by the
/// discrete Fourier transform, so its determinant mod `p` is
/// `prod_j f(omega^j)` with `f = sum c_i t^i`.
#[derive(Debug, Clone)]
pub struct CyclicField {
    pub n: usize,
    pub p: u64,
    /// `omega^i` for `0 <= i < n`.
    pub powers: Vec<u64>,
}

impl CyclicField {
    /// Largest such prime below 2^32.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let nn = n as u64;
        let mut m = ((1u64 << 32) - 1) / nn;
        loop {
            let p = m * nn + 1;
            if is_prime(p) {
                if let Some(omega) = primitive_root_of_unity(n, p) {
                    let mut powers = Vec::with_capacity(n);
                    let mut x = 1u64;
                    for _ in 0..n {
                        powers.push(x);
                        x = mul_mod(x, omega, p);
                    }
                    return CyclicField { n, p, powers };
                }
            }
            m -= 1;
            assert!(m > 0, "no prime = 1 mod {n} below 2^32");
        }
    }

    pub fn omega_pow(&self, e: usize) -> u64 {
        self.powers[e % self.n]
    }

    /// `(f(omega^j))_j` for `f` with coefficients reduced mod `t^n - 1`.
    pub fn eval_all(&self, f: &[i64]) -> Vec<u64> {
        let p = self.p;
        let coeffs: Vec<(usize, u64)> = f
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c.rem_euclid(p as i64) as u64))
            .collect();
        (0..self.n)
            .map(|j| {
                coeffs
                    .iter()
                    .fold(0u64, |acc, &(i, c)| (acc + mul_mod(c, self.omega_pow(i * j), p)) % p)
            })
            .collect()
    }

    pub fn product(&self, values: impl IntoIterator<Item = u64>) -> u64 {
        values.into_iter().fold(1u64, |acc, v| mul_mod(acc, v, self.p))
    }

    /// Whether `x = +-1 mod p`.
    pub fn is_plus_minus_one(&self, x: u64) -> bool {
        x == 1 || x == self.p - 1
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root_of_unity(n: usize, p: u64) -> Option<u64> {
    let nn = n as u64;
    let factors = prime_factors(nn);
    (2..p.min(1000)).map(|x| pow_mod(x, (p - 1) / nn, p)).find(|&w| {
        pow_mod(w, nn, p) == 1 && factors.iter().all(|&l| pow_mod(w, nn / l, p) != 1)
    })
}
