//! Resultants of integer polynomials by the subresultant pseudo-remainder
//! sequence. All divisions in the sequence are exact over `Z`.

use num_bigint::BigInt;

use super::int::{convert, with_fallback, ExactInt};
use super::poly::IntPoly;

fn trim<T: ExactInt>(p: &mut Vec<T>) {
    while p.last().is_some_and(ExactInt::is_zero) {
        p.pop();
    }
}

fn deg<T>(p: &[T]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
fn pseudo_rem<T: ExactInt>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for x in r.iter_mut() {
            *x = x.mul(&lb)?;
        }
        for (j, bc) in b.iter().enumerate() {
            let idx = dr - db + j;
            r[idx] = r[idx].sub_mul(&lead, bc)?;
        }
        trim(&mut r);
        steps -= 1;
    }
    // remaining multiplications by lc(b) that the loop skipped
    if steps > 0 {
        let f = lb.pow(steps as u64)?;
        for x in r.iter_mut() {
            *x = x.mul(&f)?;
        }
    }
    Some(r)
}

/// `Res(a, b)` with the convention `Res(a, b) = lc(a)^deg(b) * prod b(alpha)`
/// over the roots `alpha` of `a`. Zero if either input is zero.
pub(crate) fn subresultant<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Some(T::zero());
    }
    let mut sign_neg = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign_neg = true;
        }
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u64)?;
        return if sign_neg { r.neg() } else { Some(r) };
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_rem(&a, &b)?;
        if r.is_empty() {
            return Some(T::zero());
        }
        let divisor = g.mul(&h.pow(delta as u64)?)?;
        a = b;
        b = r
            .iter()
            .map(|c| c.div_exact(&divisor))
            .collect::<Option<Vec<_>>>()?;
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u64)?.div_exact(&h.pow(delta as u64 - 1)?)?
        };
        if deg(&b) == 0 {
            let da = deg(&a) as u64;
            let res = b[0].pow(da)?.div_exact(&h.pow(da - 1)?)?;
            return if sign_neg { res.neg() } else { Some(res) };
        }
    }
}

pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    with_fallback(
        || {
            let a: Vec<i128> = convert(a.coeffs())?;
            let b: Vec<i128> = convert(b.coeffs())?;
            subresultant(&a, &b).map(|r| r.to_big())
        },
        || subresultant(a.coeffs(), b.coeffs()),
    )
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), `(m+n) x (m+n)`,
/// row-major. Its determinant is `Res(a, b)`.
pub fn sylvester_matrix(a: &IntPoly, b: &IntPoly) -> (usize, Vec<BigInt>) {
    let m = a.degree().expect("nonzero a");
    let n = b.degree().expect("nonzero b");
    let size = m + n;
    let mut data = vec![BigInt::from(0); size * size];
    for i in 0..n {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            data[i * size + i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            data[(n + i) * size + i + j] = c.clone();
        }
    }
    (size, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::linalg::determinant;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn known_values() {
        // Res(t^3 - 1, 1 + t - t^2) = prod over cube roots
        assert_eq!(resultant(&IntPoly::x_n_minus_one(3), &p(&[1, 1, -1])), BigInt::from(4));
        assert_eq!(resultant(&IntPoly::x_n_minus_one(5), &p(&[1, 1, -1])).magnitude(), BigInt::from(11).magnitude());
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])), BigInt::from(-1));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[5])), BigInt::from(5));
        assert_eq!(resultant(&p(&[0, 0, 1]), &p(&[5])), BigInt::from(25));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), BigInt::from(0));
    }

    proptest! {
        #[test]
        fn matches_sylvester_determinant(
            a in proptest::collection::vec(-5i64..6, 1..7),
            b in proptest::collection::vec(-5i64..6, 1..7),
        ) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(a.degree().is_some() && b.degree().is_some());
            prop_assume!(a.degree().unwrap() + b.degree().unwrap() > 0);
            let (size, data) = sylvester_matrix(&a, &b);
            prop_assert_eq!(resultant(&a, &b), determinant(size, &data));
        }
    }
}
