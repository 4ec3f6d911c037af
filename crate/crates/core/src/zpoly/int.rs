//! Integer arithmetic shared by the exact algorithms.
//!
//! The determinant, resultant and Smith-form routines are written once over
//! [`ExactInt`]. The `i128` instance reports overflow as `None`; callers run the
//! machine-word pass first and redo the computation over [`BigInt`] whenever it
//! overflows, so results are always exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait ExactInt: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `self / o` where `o` is known to divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// Quotient rounded toward negative infinity.
    fn div_floor(&self, o: &Self) -> Option<Self>;
    fn is_multiple_of(&self, o: &Self) -> bool;
    fn cmp_abs(&self, o: &Self) -> Ordering;

    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn abs(&self) -> Option<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Some(self.clone())
        }
    }
    fn pow(&self, mut e: u64) -> Option<Self> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Some(acc)
    }
    /// `self - q * o`.
    fn sub_mul(&self, q: &Self, o: &Self) -> Option<Self> {
        self.sub(&q.mul(o)?)
    }
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(*o != 0 && self % o == 0);
        self.checked_div(*o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        if *o == -1 {
            return self.checked_neg();
        }
        Some(Integer::div_floor(self, o))
    }
    fn is_multiple_of(&self, o: &Self) -> bool {
        if *o == 0 {
            *self == 0
        } else {
            self.checked_rem(*o).is_none_or(|r| r == 0)
        }
    }
    fn cmp_abs(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(!Zero::is_zero(o) && Zero::is_zero(&(self % o)));
        Some(self / o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn is_multiple_of(&self, o: &Self) -> bool {
        if Zero::is_zero(o) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % o))
        }
    }
    fn cmp_abs(&self, o: &Self) -> Ordering {
        self.magnitude().cmp(o.magnitude())
    }
    fn one() -> Self {
        One::one()
    }
}

/// Runs `f` over `i128` and, if any step overflowed, over `BigInt`.
pub(crate) fn with_fallback<R>(
    fast: impl FnOnce() -> Option<R>,
    exact: impl FnOnce() -> Option<R>,
) -> R {
    fast().or_else(exact).expect("arbitrary-precision pass cannot overflow")
}

/// Converts a slice of big integers to `T`, failing if any does not fit.
pub(crate) fn convert<T: ExactInt>(v: &[BigInt]) -> Option<Vec<T>> {
    v.iter().map(T::from_big).collect()
}
