//! Scalar abstraction: the same polynomial and matrix code runs over exact
//! arbitrary-precision rationals, double floats, or complex doubles.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field elements the library computes with.
///
/// Exact scalars (`EXACT == true`) have decidable equality and error-free
/// arithmetic; inexact scalars must be compared against zero through an
/// explicit tolerance, which the linear algebra layer owns.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    const EXACT: bool;

    /// True when the scalar carries an imaginary part; numeric linear
    /// algebra then runs in complex arithmetic.
    const COMPLEX: bool = false;

    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Magnitude as a double, used for pivoting, tolerances and reporting.
    /// Exact zero must map to 0.0 and nonzero values should not underflow to
    /// 0.0 silently; callers that need exactness test `is_zero` instead.
    fn magnitude(&self) -> f64;

    fn to_f64(&self) -> f64;

    fn from_f64(v: f64) -> Self;

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    fn from_c64(z: Complex64) -> Self {
        Self::from_f64(z.re)
    }

    /// Exact rational image of this scalar, when one exists. Every f64 is a
    /// dyadic rational, so only complex scalars return `None`.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_rational(r: &BigRational) -> Self;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            let m = ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::MAX);
            if m == 0.0 {
                f64::MIN_POSITIVE
            } else {
                m
            }
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const COMPLEX: bool = true;

    fn from_int(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_f64(&self) -> f64 {
        self.re
    }

    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(ToPrimitive::to_f64(r).unwrap_or(f64::NAN), 0.0)
    }
}
