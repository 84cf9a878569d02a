use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{rational_to_f64, Field, OrderedField};
use crate::Rational;

/// An element `a + b·√2` of the quadratic field ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: <Rational as Zero>::zero() }
    }

    pub fn sqrt2() -> Self {
        Self { a: <Rational as Zero>::zero(), b: <Rational as One>::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { a: &self.a / &n, b: -(&self.b / &n) })
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}·√2", self.b)
        } else {
            write!(f, "{} + {}·√2", self.a, self.b)
        }
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Rational::from_integer(2.into());
        Self {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for QSqrt2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in Q(sqrt 2)")
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl Field for QSqrt2 {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::rational(<Rational as One>::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

impl OrderedField for QSqrt2 {
    fn signum_i(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: compare a² with 2b².
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(2.into()) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }
}

fn sgn(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Wire form of an exact entry: `num/den + (root2_num/root2_den)·√2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactEntry {
    pub num: i64,
    pub den: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root2_num: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root2_den: Option<i64>,
}

impl ExactEntry {
    pub fn to_qsqrt2(&self) -> Option<QSqrt2> {
        if self.den == 0 {
            return None;
        }
        let a = crate::ratio(self.num, self.den);
        let b = match (self.root2_num, self.root2_den) {
            (None, None) => <Rational as Zero>::zero(),
            (Some(n), Some(d)) if d != 0 => crate::ratio(n, d),
            _ => return None,
        };
        Some(QSqrt2 { a, b })
    }

    /// Encodes a value whose parts fit in `i64`.
    pub fn from_qsqrt2(v: &QSqrt2) -> Option<Self> {
        use num_traits::ToPrimitive;
        let num = v.a.numer().to_i64()?;
        let den = v.a.denom().to_i64()?;
        let (root2_num, root2_den) = if v.b.is_zero() {
            (None, None)
        } else {
            (Some(v.b.numer().to_i64()?), Some(v.b.denom().to_i64()?))
        };
        Some(Self { num, den, root2_num, root2_den })
    }
}
