//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.leading().recip();
        (r0.scale(&lc), s0.scale(&lc), t0.scale(&lc))
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while let Some(last) = seq.last().filter(|p| !p.is_zero()) {
            let prev = &seq[seq.len() - 2];
            let r = -&prev.rem(last).expect("nonzero");
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Cauchy bound: every complex root has modulus `< bound`.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    pub fn parse_coeffs(items: &[String]) -> Result<Self> {
        Ok(Self::new(
            items
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Cyclotomic polynomial `Phi_n`.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n >= 1);
        let mut p = &Self::monomial(Rational::one(), n as usize) - &Self::one();
        for d in 1..n {
            if n % d == 0 {
                p = p.div_rem(&Self::cyclotomic(d)).expect("nonzero").0;
            }
        }
        p
    }
}

fn sign_variations(seq: &[Polynomial], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<Ordering> = None;
    for p in seq {
        let v = p.eval(x);
        let s = v.cmp(&Rational::zero());
        if s == Ordering::Equal {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

fn sign_variations_at_infinity(seq: &[Polynomial], positive: bool) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let lc_pos = p.leading().is_positive();
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        let s = if positive || !odd { lc_pos } else { !lc_pos };
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

/// An isolating interval for one real root of a square-free polynomial.
///
/// Either `lo == hi` (an exact rational root) or `p(lo)` and `p(hi)` are
/// nonzero with opposite signs and the open interval holds exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RealRootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Bisect until the width is at most `width`.
    pub fn refine(&mut self, p: &Polynomial, width: &Rational) {
        if self.is_exact() {
            return;
        }
        let lo_pos = p.eval(&self.lo).is_positive();
        while &self.width() > width {
            let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
            let v = p.eval(&mid);
            if v.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if v.is_positive() == lo_pos {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }
}

impl Polynomial {
    /// Number of distinct real roots (via Sturm sign variations at +-infinity).
    pub fn real_root_count(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        sign_variations_at_infinity(&seq, false) - sign_variations_at_infinity(&seq, true)
    }

    /// Isolate every real root of a square-free polynomial, in ascending order.
    pub fn isolate_real_roots(&self) -> Vec<RealRootInterval> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = self.sturm_sequence();
        let count =
            |a: &Rational, b: &Rational| sign_variations(&seq, a) - sign_variations(&seq, b);
        let two = Rational::from_integer(BigInt::from(2));
        let bound = self.root_bound();
        let mut out = Vec::new();
        // Work list of half-open intervals (a, b] with their root counts, kept
        // so that roots come out in ascending order.
        let mut stack = vec![(
            -bound.clone(),
            bound.clone(),
            count(&-bound.clone(), &bound),
        )];
        while let Some((a, b, n)) = stack.pop() {
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(self.tighten(&seq, a, b));
                continue;
            }
            let mid = (&a + &b) / &two;
            let left = count(&a, &mid);
            // Push right first so the left half is processed first.
            stack.push((mid.clone(), b, n - left));
            stack.push((a, mid, left));
        }
        out
    }

    /// Turn a half-open interval (a, b] holding one root into an isolating
    /// interval with a strict sign change, or an exact root.
    fn tighten(&self, seq: &[Polynomial], mut a: Rational, mut b: Rational) -> RealRootInterval {
        let two = Rational::from_integer(BigInt::from(2));
        loop {
            if self.eval(&b).is_zero() {
                return RealRootInterval {
                    lo: b.clone(),
                    hi: b,
                };
            }
            if !self.eval(&a).is_zero() {
                return RealRootInterval { lo: a, hi: b };
            }
            let mid = (&a + &b) / &two;
            if sign_variations(seq, &mid) - sign_variations(seq, &b) == 1 {
                a = mid;
            } else {
                b = mid;
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Renders in the CLI grammar with generator symbol `x`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
