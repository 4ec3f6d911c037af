//! Parameters of type-F cyclic presentations and the normalizations that
//! preserve the isomorphism type (or at least perfectness) of the group.
//!
//! A parameter tuple `(r, n, k, s, q, epsilon)` defines the presentation with
//! generators `x_0, ..., x_{n-1}` and relators
//!
//! ```text
//! x_j x_{j+q} ... x_{j+(r-1)q} (x_{j+k-1} x_{j+k-1+q} ... x_{j+k-1+(s-1)q})^epsilon,   0 <= j < n
//! ```
//!
//! with subscripts mod `n`. Prishchepov groups `P(r,n,k,s,q)` are the
//! `epsilon = -1` case. `k` and `q` are stored as given; every congruence test
//! reduces them mod `n`, and normalizing operations return representatives in
//! `[1, n]`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The sign applied to the second product of the relator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!(
                "epsilon must be 1 or -1, got {other}"
            ))),
        }
    }
}

fn default_epsilon() -> Sign {
    Sign::Minus
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeFParams {
    pub r: u64,
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub q: u64,
    #[serde(default = "default_epsilon")]
    pub epsilon: Sign,
}

impl TypeFParams {
    pub fn new(r: u64, n: u64, k: u64, s: u64, q: u64, epsilon: Sign) -> Result<Self> {
        let p = TypeFParams {
            r,
            n,
            k,
            s,
            q,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {}", self.n)));
        }
        for (name, v) in [("r", self.r), ("k", self.k), ("s", self.s), ("q", self.q)] {
            if v == 0 {
                return Err(Error::InvalidParams(format!("{name} must be >= 1")));
            }
        }
        Ok(())
    }

    pub fn is_prishchepov(&self) -> bool {
        self.epsilon == Sign::Minus
    }

    pub fn as_prishchepov(&self) -> Option<PrishchepovParams> {
        self.is_prishchepov().then_some(PrishchepovParams(*self))
    }

    /// `r + epsilon * s`, the exponent sum of the relator.
    pub fn exponent_sum(&self) -> i128 {
        self.r as i128 + self.epsilon.as_i64() as i128 * self.s as i128
    }
}

impl fmt::Display for TypeFParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epsilon {
            Sign::Minus => write!(f, "P({},{},{},{},{})", self.r, self.n, self.k, self.s, self.q),
            Sign::Plus => write!(
                f,
                "P+({},{},{},{},{})",
                self.r, self.n, self.k, self.s, self.q
            ),
        }
    }
}

/// Accepts `P(r,n,k,s,q)`, `P+(r,n,k,s,q)` for `epsilon = +1`, or a JSON
/// object `{"r":..,"n":..,"k":..,"s":..,"q":..,"epsilon":..}`.
impl FromStr for TypeFParams {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = input.trim();
        let p: TypeFParams = if trimmed.starts_with('{') {
            serde_json::from_str(trimmed).map_err(|e| parse_err(&e.to_string()))?
        } else {
            let (epsilon, rest) = if let Some(rest) = trimmed.strip_prefix("P+") {
                (Sign::Plus, rest)
            } else if let Some(rest) = trimmed.strip_prefix('P') {
                (Sign::Minus, rest)
            } else {
                return Err(parse_err("expected P(r,n,k,s,q)"));
            };
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| parse_err("expected parenthesised argument list"))?;
            let vals = inner
                .split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(&e.to_string()))?;
            let [r, n, k, s, q] = vals[..] else {
                return Err(parse_err("expected exactly five integers"));
            };
            TypeFParams {
                r,
                n,
                k,
                s,
                q,
                epsilon,
            }
        };
        p.validate()?;
        Ok(p)
    }
}

/// A type-F parameter tuple with `epsilon = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrishchepovParams(TypeFParams);

impl PrishchepovParams {
    pub fn new(r: u64, n: u64, k: u64, s: u64, q: u64) -> Result<Self> {
        TypeFParams::new(r, n, k, s, q, Sign::Minus).map(PrishchepovParams)
    }

    /// Builds a tuple without validation. Used for the `n = 1` free-product
    /// factor of a fully reducible presentation, and for the `s = 0` label of
    /// the degenerate `r = 1` member of the `k = 3` family.
    pub(crate) fn new_unchecked(r: u64, n: u64, k: u64, s: u64, q: u64) -> Self {
        debug_assert!(n >= 1 && r >= 1 && k >= 1 && q >= 1);
        PrishchepovParams(TypeFParams {
            r,
            n,
            k,
            s,
            q,
            epsilon: Sign::Minus,
        })
    }

    pub fn params(&self) -> TypeFParams {
        self.0
    }
}

impl Deref for PrishchepovParams {
    type Target = TypeFParams;
    fn deref(&self) -> &TypeFParams {
        &self.0
    }
}

impl fmt::Display for PrishchepovParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PrishchepovParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p: TypeFParams = s.parse()?;
        p.as_prishchepov()
            .ok_or_else(|| Error::InvalidParams("expected epsilon = -1".into()))
    }
}

impl TryFrom<TypeFParams> for PrishchepovParams {
    type Error = Error;
    fn try_from(p: TypeFParams) -> Result<Self> {
        p.validate()?;
        p.as_prishchepov()
            .ok_or_else(|| Error::InvalidParams("expected epsilon = -1".into()))
    }
}

// ---------------------------------------------------------------------------
// modular helpers

/// `x mod n` in `[0, n)`.
pub fn residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Representative of `x mod n` in `[1, n]`.
pub fn residue_1n(x: i128, n: u64) -> u64 {
    residue(x - 1, n) + 1
}

pub fn congruent(a: i128, b: i128, n: u64) -> bool {
    residue(a - b, n) == 0
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    (e.gcd == 1).then(|| residue(e.x, n))
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

// ---------------------------------------------------------------------------
// exponents of the shift extension

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftExponents {
    pub a: u64,
    pub b: u64,
}

pub fn shift_exponents(p: &TypeFParams) -> ShiftExponents {
    let (r, k, s, q) = (p.r as i128, p.k as i128, p.s as i128, p.q as i128);
    match p.epsilon {
        Sign::Minus => ShiftExponents {
            a: residue(k - q * (r - s) - 1, p.n),
            b: residue(k - 1, p.n),
        },
        Sign::Plus => {
            let a = residue(k - q * r - 1, p.n);
            ShiftExponents {
                a,
                b: residue(a as i128 + q * (r + s), p.n),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// isomorphism-preserving reductions

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FreeProductDecomposition {
    /// `d = gcd(n, q, k - 1)`, the number of free factors.
    pub multiplicity: u64,
    /// `P(r, n/d, K, s, q/d)` with `K - 1 = (k - 1)/d mod n/d`. Has `n = 1`
    /// exactly when `n | q` and `n | k - 1`.
    pub factor: PrishchepovParams,
}

pub fn free_product_decompose(p: &PrishchepovParams) -> FreeProductDecomposition {
    let d = gcd3(p.n, p.q, p.k - 1);
    let big_n = p.n / d;
    let big_q = p.q / d;
    let big_k = residue_1n(((p.k - 1) / d) as i128 + 1, big_n);
    FreeProductDecomposition {
        multiplicity: d,
        factor: PrishchepovParams::new_unchecked(p.r, big_n, big_k, p.s, big_q),
    }
}

/// `P(r,n,k,s,q) = P(r,n,q'(k-1)+1,s,1)` where `q q' = 1 mod n`.
pub fn reduce_q_to_one(p: &PrishchepovParams) -> Result<PrishchepovParams> {
    let inv = mod_inverse(p.q % p.n, p.n).ok_or_else(|| {
        Error::InvalidParams(format!(
            "q-reduction needs gcd(n, q) = 1, got gcd({}, {}) = {}",
            p.n,
            p.q,
            p.n.gcd(&p.q)
        ))
    })?;
    let k = residue_1n(inv as i128 * (p.k as i128 - 1) + 1, p.n);
    Ok(PrishchepovParams::new_unchecked(p.r, p.n, k, p.s, 1))
}

/// `P(r,n,k,s,q) = P(s,n,n-k+2,r,q)`.
pub fn swap_r_s(p: &PrishchepovParams) -> PrishchepovParams {
    let k = residue_1n(p.n as i128 - p.k as i128 + 2, p.n);
    PrishchepovParams::new_unchecked(p.s, p.n, k, p.r, p.q)
}

// ---------------------------------------------------------------------------
// structural predicates

/// `q(r - s) = 2(k - 1) mod n`.
pub fn is_type_z(p: &TypeFParams) -> bool {
    let (r, k, s, q) = (p.r as i128, p.k as i128, p.s as i128, p.q as i128);
    congruent(q * (r - s), 2 * (k - 1), p.n)
}

/// `q(r + s) = 0 mod n`.
pub fn is_type_z_prime(p: &TypeFParams) -> bool {
    congruent(p.q as i128 * (p.r as i128 + p.s as i128), 0, p.n)
}

pub fn is_type_z_tilde(p: &TypeFParams) -> bool {
    is_type_z(p) || is_type_z_prime(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    /// `H(r,n,s) = P(r,n,r+1,s,1)`.
    H { r: u64, n: u64, s: u64 },
    /// Generalized Sieradski group `S(r,n) = P(r,n,2,r-1,2)`.
    S { r: u64, n: u64 },
    /// Fibonacci group `F(2,n) = P(2,n,3,1,1)`.
    Fibonacci { n: u64 },
    /// `G_n(m,k) = P(2,n,k+1,1,m)`.
    G { n: u64, m: u64, k: u64 },
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::H { r, n, s } => write!(f, "H({r},{n},{s})"),
            Family::S { r, n } => write!(f, "S({r},{n})"),
            Family::Fibonacci { n } => write!(f, "F(2,{n})"),
            Family::G { n, m, k } => write!(f, "G_{n}({m},{k})"),
            Family::Generic => write!(f, "generic"),
        }
    }
}

/// Every named family the tuple instantiates, comparing `k` and `q` mod `n`.
/// When `gcd(n, q) = 1` the H-form is matched after reducing `q` to 1.
pub fn recognize_named_family(p: &PrishchepovParams) -> Vec<Family> {
    let n = p.n;
    let (r, s) = (p.r, p.s);
    let kr = residue(p.k as i128, n);
    let qr = residue(p.q as i128, n);
    let mut out = Vec::new();

    let h_form = |pp: &PrishchepovParams| {
        residue(pp.q as i128, n) == residue(1, n)
            && residue(pp.k as i128, n) == residue(pp.r as i128 + 1, n)
    };
    let reduced = reduce_q_to_one(p).ok();
    if h_form(p) || reduced.as_ref().is_some_and(h_form) {
        out.push(Family::H { r, n, s });
    }
    if r >= 2 && s == r - 1 && kr == residue(2, n) && qr == residue(2, n) {
        out.push(Family::S { r, n });
    }
    if r == 2 && s == 1 {
        if kr == residue(3, n) && qr == residue(1, n) {
            out.push(Family::Fibonacci { n });
        }
        out.push(Family::G {
            n,
            m: residue_1n(p.q as i128, n),
            k: residue(p.k as i128 - 1, n),
        });
    }
    if out.is_empty() {
        out.push(Family::Generic);
    }
    out
}
