//! Scalar abstractions: the float type used by analytic code, and the
//! coefficient ring of the field algebra.
//!
//! Coefficients are either exact Gaussian rationals or complex floats over any
//! [`Real`] (`f32`, `f64`). The mode is part of the type, so a product of an
//! exact and an approximate element does not type-check.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{from_f64, to_f64, Rational};

/// Floating-point scalar for analytic evaluation.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Unit roundoff.
    fn unit_roundoff() -> Self {
        Self::epsilon() / (Self::one() + Self::one())
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite conversion")
    }
}

impl<F> Real for F where
    F: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

/// Exact Gaussian rational `a + bi`.
pub type GaussianRational = Complex<Rational>;

/// Coefficient ring of the field algebra.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn from_parts(re: &Rational, im: &Rational) -> Self;

    /// Exact rational real and imaginary parts (floats convert exactly).
    fn to_parts(&self) -> (Rational, Rational);

    fn from_rational(q: &Rational) -> Self {
        Self::from_parts(q, &Rational::zero())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex<f64>;

    fn norm_sqr_f64(&self) -> f64 {
        self.to_c64().norm_sqr()
    }

    /// Equality for exact coefficients; `|a - b| <= tol * max(1, |a|, |b|)` for floats.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    /// Tolerance used by default comparisons in this mode.
    fn default_tolerance() -> f64;
}

impl Coefficient for GaussianRational {
    const MODE: Mode = Mode::Exact;

    fn from_parts(re: &Rational, im: &Rational) -> Self {
        Complex::new(re.clone(), im.clone())
    }

    fn to_parts(&self) -> (Rational, Rational) {
        (self.re.clone(), self.im.clone())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(to_f64(&self.re), to_f64(&self.im))
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn default_tolerance() -> f64 {
        0.0
    }
}

macro_rules! impl_float_coefficient {
    ($f:ty) => {
        impl Coefficient for Complex<$f> {
            const MODE: Mode = Mode::Approx;

            fn from_parts(re: &Rational, im: &Rational) -> Self {
                Complex::new(
                    <$f>::from_f64_lossy(to_f64(re)),
                    <$f>::from_f64_lossy(to_f64(im)),
                )
            }

            fn to_parts(&self) -> (Rational, Rational) {
                let c = self.to_c64();
                (from_f64(c.re), from_f64(c.im))
            }

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn to_c64(&self) -> Complex<f64> {
                Complex::new(
                    self.re.to_f64().unwrap_or(f64::NAN),
                    self.im.to_f64().unwrap_or(f64::NAN),
                )
            }

            fn close_to(&self, other: &Self, tol: f64) -> bool {
                let a = self.to_c64();
                let b = other.to_c64();
                (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
            }

            fn default_tolerance() -> f64 {
                1e3 * <$f>::epsilon().to_f64().unwrap_or(1e-12)
            }
        }
    };
}

impl_float_coefficient!(f32);
impl_float_coefficient!(f64);
