//! Rational interval and complex-box arithmetic for certified numerics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{ceil_dyadic, floor_dyadic, format_rational, to_f64, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    /// `[c - r, c + r]`.
    pub fn around(c: &Rational, r: &Rational) -> Self {
        Interval::new(c - r, c + r)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, if it is constant and nonzero.
    pub fn strict_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn shift(&self, c: &Rational) -> Interval {
        Interval::new(&self.lo + c, &self.hi + c)
    }

    pub fn sqr(&self) -> Interval {
        let m = self * self;
        if self.contains_zero() {
            Interval::new(Rational::zero(), m.hi)
        } else {
            m
        }
    }

    /// Contained integers, when there is exactly one.
    pub fn unique_integer(&self) -> Option<num_bigint::BigInt> {
        let lo = self.lo.ceil().to_integer();
        let hi = self.hi.floor().to_integer();
        (lo == hi).then_some(lo)
    }

    pub fn contains_integer(&self) -> bool {
        self.lo.ceil() <= self.hi.floor()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().cloned().expect("four candidates");
        let hi = c.iter().max().cloned().expect("four candidates");
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

/// Axis-aligned rectangle in C with rational corners, certified to contain
/// its target value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBox {
    pub re: Interval,
    pub im: Interval,
}

impl CertifiedBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        CertifiedBox { re, im }
    }

    pub fn real(re: Interval) -> Self {
        CertifiedBox {
            re,
            im: Interval::zero(),
        }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        CertifiedBox {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero(), Rational::zero())
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    pub fn conj(&self) -> Self {
        CertifiedBox {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn intersects(&self, other: &CertifiedBox) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersect(&self, other: &CertifiedBox) -> Option<CertifiedBox> {
        Some(CertifiedBox {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn add_rational(&self, c: &Rational) -> Self {
        CertifiedBox {
            re: self.re.shift(c),
            im: self.im.clone(),
        }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        CertifiedBox {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (to_f64(&self.re.mid()), to_f64(&self.im.mid()))
    }

    /// Interval evaluation of `sum coeffs[k] * z^k` over this box, rounding
    /// outward to `2^-bits` after every Horner step to bound endpoint growth.
    pub fn eval_poly(&self, coeffs: &[Rational], bits: u32) -> CertifiedBox {
        let mut acc = CertifiedBox::zero();
        for c in coeffs.iter().rev() {
            acc = (&acc * self).add_rational(c).round_out(bits);
        }
        acc
    }
}

impl Add for &CertifiedBox {
    type Output = CertifiedBox;
    fn add(self, rhs: &CertifiedBox) -> CertifiedBox {
        CertifiedBox::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CertifiedBox {
    type Output = CertifiedBox;
    fn sub(self, rhs: &CertifiedBox) -> CertifiedBox {
        CertifiedBox::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CertifiedBox {
    type Output = CertifiedBox;
    fn mul(self, rhs: &CertifiedBox) -> CertifiedBox {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        CertifiedBox::new(re, im)
    }
}

impl fmt::Display for CertifiedBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

/// Serialized form of a box: exact endpoints as `p/q` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoxJson {
    pub re: [String; 2],
    pub im: [String; 2],
    pub width: String,
}

impl From<&CertifiedBox> for BoxJson {
    fn from(b: &CertifiedBox) -> Self {
        BoxJson {
            re: [format_rational(&b.re.lo), format_rational(&b.re.hi)],
            im: [format_rational(&b.im.lo), format_rational(&b.im.hi)],
            width: format_rational(&b.width()),
        }
    }
}
