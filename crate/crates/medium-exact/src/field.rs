use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::Rational;

/// Scalar field used by [`crate::Mat`].
///
/// `vanishes` is an exact zero test. For `f64` it compares against `0.0`, so the
/// exact algorithms in [`crate::linalg`] should not be fed floating data;
/// floating callers use their own thresholded routines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn to_f64(&self) -> f64;
}

/// A field with a total order compatible with the arithmetic.
pub trait OrderedField: Field {
    /// -1, 0 or 1.
    fn signum_i(&self) -> i32;

    fn abs_val(&self) -> Self {
        if self.signum_i() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl OrderedField for f64 {
    fn signum_i(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl OrderedField for Rational {
    fn signum_i(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Nearest double (up to a final rounding) of a rational with arbitrary size
/// numerator and denominator.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to about 60 significant bits before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let sn = (nb - 60).max(0);
    let sd = (db - 60).max(0);
    let n = (r.numer() >> sn as usize).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> sd as usize).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((sn - sd) as i32)
}
