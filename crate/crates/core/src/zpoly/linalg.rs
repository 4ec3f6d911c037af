//! Exact dense integer linear algebra: fraction-free determinant and Smith
//! normal form.

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::int::{convert, ExactInt};

/// Row-major square or rectangular integer matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: ExactInt> Matrix<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]` from column `from` on.
    fn row_sub_mul(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let v = self.at(dst, j).sub_mul(q, self.at(src, j))?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// `col[dst] -= q * col[src]` from row `from` on.
    fn col_sub_mul(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let v = self.at(i, dst).sub_mul(q, self.at(i, src))?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }
}

impl Matrix<i128> {
    fn to_big(&self) -> Matrix<BigInt> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(ExactInt::to_big).collect(),
        }
    }
}

/// Bareiss elimination paused before step `k`.
struct BareissState<T> {
    m: Matrix<T>,
    k: usize,
    prev: T,
    negate: bool,
}

/// Runs Bareiss elimination from `st`. Every intermediate entry is a minor of
/// the input, so all divisions are exact. On overflow, returns the state at
/// the start of the step that overflowed.
fn bareiss_run<T: ExactInt>(mut st: BareissState<T>) -> Result<T, BareissState<T>> {
    let n = st.m.rows;
    let mut scratch: Vec<T> = Vec::with_capacity(n * n);
    while st.k + 1 < n {
        let k = st.k;
        if st.m.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !st.m.at(i, k).is_zero()) {
                Some(i) => {
                    st.m.swap_rows(i, k);
                    st.negate = !st.negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot = st.m.at(k, k).clone();
        scratch.clear();
        for i in k + 1..n {
            let lead = st.m.at(i, k);
            for j in k + 1..n {
                let v = (|| {
                    st.m.at(i, j)
                        .mul(&pivot)?
                        .sub(&lead.mul(st.m.at(k, j))?)?
                        .div_exact(&st.prev)
                })();
                match v {
                    Some(v) => scratch.push(v),
                    None => return Err(st),
                }
            }
        }
        let w = n - k - 1;
        for (idx, v) in scratch.drain(..).enumerate() {
            st.m.data[(k + 1 + idx / w) * n + k + 1 + idx % w] = v;
        }
        st.prev = pivot;
        st.k += 1;
    }
    let det = st.m.at(n - 1, n - 1).clone();
    if st.negate {
        det.neg().ok_or(st)
    } else {
        Ok(det)
    }
}

#[cfg(test)]
pub(crate) fn bareiss_det<T: ExactInt>(m: Matrix<T>) -> Option<T> {
    debug_assert_eq!(m.rows, m.cols);
    if m.rows == 0 {
        return Some(T::one());
    }
    bareiss_run(BareissState {
        m,
        k: 0,
        prev: T::one(),
        negate: false,
    })
    .ok()
}

/// Exact determinant: machine-word Bareiss, continued over big integers from
/// the step where it first overflows.
pub(crate) fn determinant(rows: usize, data: &[BigInt]) -> BigInt {
    if rows == 0 {
        return BigInt::from(1);
    }
    let big_start = || BareissState {
        m: Matrix {
            rows,
            cols: rows,
            data: data.to_vec(),
        },
        k: 0,
        prev: BigInt::from(1),
        negate: false,
    };
    let resumed = match convert::<i128>(data) {
        Some(small) => match bareiss_run(BareissState {
            m: Matrix {
                rows,
                cols: rows,
                data: small,
            },
            k: 0,
            prev: 1i128,
            negate: false,
        }) {
            Ok(d) => return d.to_big(),
            Err(st) => BareissState {
                m: st.m.to_big(),
                k: st.k,
                prev: st.prev.to_big(),
                negate: st.negate,
            },
        },
        None => big_start(),
    };
    bareiss_run(resumed).unwrap_or_else(|_| unreachable!("big integers do not overflow"))
}

/// Smith reduction paused before pivot step `t`.
struct SmithState<T> {
    m: Matrix<T>,
    t: usize,
    diag: Vec<T>,
}

/// Eliminates the pivot row and column at step `t`; `None` on overflow, in
/// which case `m` is left partially updated.
fn smith_step<T: ExactInt>(m: &mut Matrix<T>, t: usize) -> Option<Option<T>> {
    let (rows, cols) = (m.rows, m.cols);
    // least nonzero entry of the trailing block
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            let v = m.at(i, j);
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.cmp_abs(m.at(bi, bj)) == Ordering::Less) {
                best = Some((i, j));
            }
        }
    }
    let Some((bi, bj)) = best else {
        return Some(None);
    };
    m.swap_rows(t, bi);
    m.swap_cols(t, bj);

    loop {
        let pivot = m.at(t, t).clone();
        let mut clean = true;
        for i in t + 1..rows {
            if !m.at(i, t).is_zero() {
                let q = round_div(m.at(i, t), &pivot)?;
                m.row_sub_mul(i, t, &q, t)?;
                clean &= m.at(i, t).is_zero();
            }
        }
        for j in t + 1..cols {
            if !m.at(t, j).is_zero() {
                let q = round_div(m.at(t, j), &pivot)?;
                m.col_sub_mul(j, t, &q, t)?;
                clean &= m.at(t, j).is_zero();
            }
        }
        if !clean {
            // a remainder smaller than the pivot survived; promote it
            let mut best = (t, t);
            for i in t + 1..rows {
                if !m.at(i, t).is_zero() && m.at(i, t).cmp_abs(m.at(best.0, best.1)) == Ordering::Less {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !m.at(t, j).is_zero() && m.at(t, j).cmp_abs(m.at(best.0, best.1)) == Ordering::Less {
                    best = (t, j);
                }
            }
            m.swap_rows(t, best.0);
            m.swap_cols(t, best.1);
            continue;
        }
        let offender =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m.at(i, j).is_multiple_of(&pivot)));
        match offender {
            Some(i) => {
                // row[t] += row[i]; row t is zero past the pivot, so only the tail moves
                for j in t + 1..cols {
                    let v = m.at(t, j).add(m.at(i, j))?;
                    m.data[t * cols + j] = v;
                }
            }
            None => break,
        }
    }
    Some(Some(m.at(t, t).abs()?))
}

fn smith_run<T: ExactInt>(mut st: SmithState<T>) -> Result<Vec<T>, SmithState<T>> {
    while st.t < st.m.rows.min(st.m.cols) {
        let snapshot = st.m.clone();
        match smith_step(&mut st.m, st.t) {
            Some(Some(d)) => st.diag.push(d),
            Some(None) => break,
            None => {
                st.m = snapshot;
                return Err(st);
            }
        }
        st.t += 1;
    }
    Ok(st.diag)
}

/// Diagonal of the Smith normal form: nonnegative, nonzero entries forming a
/// divisibility chain, one per unit of rank.
///
/// Pivots are chosen by least nonzero absolute value; the pivot row and
/// column are cleared with rounded quotients, and a pivot that fails to divide
/// the remaining block absorbs the offending row.
#[cfg(test)]
pub(crate) fn smith_diagonal<T: ExactInt>(m: Matrix<T>) -> Option<Vec<T>> {
    smith_run(SmithState { m, t: 0, diag: Vec::new() }).ok()
}

/// Quotient rounded to the nearest integer, ties toward negative infinity.
fn round_div<T: ExactInt>(a: &T, b: &T) -> Option<T> {
    let q = a.div_floor(b)?;
    let r = a.sub_mul(&q, b)?;
    // r has the sign of b and |r| < |b|; step once more if |2r| > |b|
    let twice = r.add(&r)?;
    if twice.cmp_abs(b) == Ordering::Greater {
        q.add(&T::one())
    } else {
        Some(q)
    }
}

/// Smith diagonal with a machine-word pass continued over big integers from
/// the pivot step where it first overflows.
pub(crate) fn smith_normal_form(rows: usize, cols: usize, data: &[BigInt]) -> Vec<BigInt> {
    let resumed = match convert::<i128>(data) {
        Some(small) => match smith_run(SmithState {
            m: Matrix { rows, cols, data: small },
            t: 0,
            diag: Vec::new(),
        }) {
            Ok(d) => return d.iter().map(ExactInt::to_big).collect(),
            Err(st) => SmithState {
                m: st.m.to_big(),
                t: st.t,
                diag: st.diag.iter().map(ExactInt::to_big).collect(),
            },
        },
        None => SmithState {
            m: Matrix {
                rows,
                cols,
                data: data.to_vec(),
            },
            t: 0,
            diag: Vec::new(),
        },
    };
    smith_run(resumed).unwrap_or_else(|_| unreachable!("big integers do not overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(n: usize, a: &[i64]) -> i128 {
        if n == 1 {
            return a[0] as i128;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<i64> = (1..n)
                    .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| a[i * n + j]))
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * a[c] as i128 * cofactor_det(n - 1, &minor)
            })
            .sum()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(3, &big(&[1, 1, -1, -1, 1, 1, 1, -1, 1])), BigInt::from(4));
        assert_eq!(determinant(2, &big(&[0, 1, 1, 0])), BigInt::from(-1));
        assert_eq!(determinant(2, &big(&[1, 2, 2, 4])), BigInt::from(0));
        assert_eq!(determinant(0, &[]), BigInt::from(1));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // diag(2^100, 2^100): the i128 pass overflows on the product
        let p: BigInt = BigInt::from(1) << 100;
        let data = vec![p.clone(), BigInt::from(0), BigInt::from(0), p.clone()];
        assert_eq!(determinant(2, &data), &p * &p);
    }

    fn big_only_det(n: usize, a: &[BigInt]) -> BigInt {
        bareiss_det(Matrix { rows: n, cols: n, data: a.to_vec() }).unwrap()
    }

    fn big_only_smith(n: usize, a: &[BigInt]) -> Vec<BigInt> {
        smith_diagonal(Matrix { rows: n, cols: n, data: a.to_vec() }).unwrap()
    }

    #[test]
    fn resumes_after_midway_overflow() {
        // entries near 2^40: early steps fit in i128, later minors do not
        let n = 7;
        let mut x: i64 = 0x1234_5678_9abc;
        let data: Vec<BigInt> = (0..n * n)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                BigInt::from((x >> 20) % (1 << 40))
            })
            .collect();
        assert!(bareiss_det(Matrix::<i128> { rows: n, cols: n, data: convert(&data).unwrap() }).is_none());
        assert_eq!(determinant(n, &data), big_only_det(n, &data));
        assert_eq!(smith_normal_form(n, n, &data), big_only_smith(n, &data));
    }

    #[test]
    fn smith_examples() {
        let d = smith_normal_form(3, 3, &big(&[1, 1, -1, -1, 1, 1, 1, -1, 1]));
        assert_eq!(d, big(&[1, 2, 2]));
        let d = smith_normal_form(2, 2, &big(&[1, -1, -1, 1]));
        assert_eq!(d, big(&[1]));
        let d = smith_normal_form(2, 3, &big(&[2, 4, 4, -6, 6, 12]));
        assert_eq!(d, big(&[2, 6]));
        assert!(smith_normal_form(2, 2, &big(&[0, 0, 0, 0])).is_empty());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let a = &seed[..n * n];
            prop_assert_eq!(determinant(n, &big(a)), BigInt::from(cofactor_det(n, a)));
        }

        #[test]
        fn smith_product_is_abs_det(n in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let a = big(&seed[..n * n]);
            let d = smith_normal_form(n, n, &a);
            for w in d.windows(2) {
                prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
            }
            let det = determinant(n, &a);
            if d.len() == n {
                let prod: BigInt = d.iter().product();
                prop_assert_eq!(prod, num_traits::Signed::abs(&det));
            } else {
                prop_assert_eq!(det, BigInt::from(0));
            }
        }
    }
}
