//! Working-precision arithmetic.
//!
//! [`Scalar`] is the small field interface shared by the Bell-polynomial and
//! Faà di Bruno code. It is implemented for `f64`, exact rationals and the
//! extended-precision [`Mp`] type.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

type Float = FBig<HalfEven, 2>;

/// Field operations needed by the derivative machinery.
///
/// Constants are built "like" an existing value so that precision-carrying
/// types can propagate their working precision.
pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn int_like(&self, n: i64) -> Self;

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    /// `x` converted to the type (and precision) of `self`.
    fn lift(&self, x: f64) -> Self;

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn int_like(&self, n: i64) -> Self {
        n as f64
    }

    fn lift(&self, x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn lift(&self, x: f64) -> Self {
        rational_from_f64(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Binary working precision, built from a decimal digit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: usize,
}

impl Precision {
    /// Precision holding at least `digits` significant decimal digits.
    pub fn from_digits(digits: u32) -> Self {
        let bits = (f64::from(digits.max(1)) * std::f64::consts::LOG2_10).ceil() as usize;
        Self { bits: bits + 8 }
    }

    pub fn bits(self) -> usize {
        self.bits
    }

    pub fn float(self, x: f64) -> Mp {
        assert!(x.is_finite(), "non-finite value {x} cannot enter extended precision");
        let v = Float::try_from(x).expect("finite f64 converts exactly");
        Mp(v.with_precision(self.bits).value())
    }

    pub fn int(self, n: i64) -> Mp {
        Mp(Float::from(dashu_int::IBig::from(n)).with_precision(self.bits).value())
    }
}

/// Extended-precision real number with a fixed binary precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp(Float);

impl Mp {
    pub fn precision(&self) -> Precision {
        Precision { bits: self.0.precision() }
    }

    pub fn abs(&self) -> Mp {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.repr().significand().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == dashu_base::Sign::Negative && !self.is_zero()
    }

    pub fn powi(&self, n: u32) -> Mp {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({})", self.0)
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! mp_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Mp {
            type Output = Mp;
            fn $method(self, rhs: Mp) -> Mp {
                Mp(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Mp> for Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<&'a Mp> for &'a Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp(&self.0 $op &rhs.0)
            }
        }
    };
}

mp_binop!(Add, add, +);
mp_binop!(Sub, sub, -);
mp_binop!(Mul, mul, *);
mp_binop!(Div, div, /);

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Scalar for Mp {
    fn int_like(&self, n: i64) -> Self {
        self.precision().int(n)
    }

    fn lift(&self, x: f64) -> Self {
        self.precision().float(x)
    }

    fn to_f64(&self) -> f64 {
        Mp::to_f64(self)
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    carry: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Rational value of an `f64`, exact.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}
