//! Integer-indexed series over `Q`: Dirichlet convolution, inversion, and the
//! Mellin-type evaluation `D_f(y) = sum a_n n^(-2 pi i y)`.

mod io;

use num_complex::Complex;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::int;
use crate::scalar::Coefficient;

pub use io::{read_series_csv, write_series_csv};

/// Smallest-prime-factor table up to `n`.
#[derive(Clone, Debug)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                for j in (i..=n).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Sieve { spf }
    }

    pub fn bound(&self) -> usize {
        self.spf.len() - 1
    }

    /// Prime factorisation as `(p, e)` pairs, ascending.
    pub fn factor(&self, mut n: usize) -> Vec<(usize, u32)> {
        assert!(n >= 1 && n <= self.bound(), "{n} outside the sieve");
        let mut out: Vec<(usize, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All divisors of `n`, ascending.
    pub fn divisors(&self, n: usize) -> Vec<usize> {
        let mut divs = vec![1usize];
        for (p, e) in self.factor(n) {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Coefficients `a_1, ..., a_N` of a series supported on positive integers.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> IntegerSeries<C> {
    pub fn zeros(n: usize) -> Self {
        IntegerSeries {
            coeffs: vec![C::zero(); n],
        }
    }

    /// `coeffs[k]` is `a_(k+1)`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        IntegerSeries { coeffs }
    }

    /// The Dirichlet identity `delta_1`.
    pub fn delta(n: usize) -> Self {
        let mut s = Self::zeros(n);
        if n > 0 {
            s.coeffs[0] = C::one();
        }
        s
    }

    /// `a_n = 1` for all `n <= N`.
    pub fn ones(n: usize) -> Self {
        IntegerSeries {
            coeffs: vec![C::one(); n],
        }
    }

    /// Copy of `f`, whose indices must be integers in `1..=n`.
    pub fn from_algebra(f: &AlgebraElement<C>, n: usize) -> Result<Self> {
        if f.field().degree() != 1 {
            return Err(Error::FamilyInapplicable(
                "integer series need the field Q".into(),
            ));
        }
        let mut s = Self::zeros(n);
        for (alpha, c) in f.terms() {
            let q = alpha.as_rational().expect("degree one");
            let k = q
                .is_integer()
                .then(|| q.to_integer())
                .and_then(|k| num_traits::ToPrimitive::to_usize(&k))
                .filter(|&k| k >= 1 && k <= n)
                .ok_or_else(|| Error::NonIntegerIndex(alpha.to_string()))?;
            s.coeffs[k - 1] = c.clone();
        }
        Ok(s)
    }

    pub fn to_algebra(&self) -> AlgebraElement<C> {
        let q = NumberField::rationals();
        let terms: Vec<_> = self
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (FieldElement::from_rational(&q, int(n as i64)), c.clone()))
            .collect();
        AlgebraElement::from_terms(&q, terms).expect("indices in Q")
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `a_n` for `1 <= n <= N`, zero beyond.
    pub fn get(&self, n: usize) -> C {
        if n >= 1 && n <= self.coeffs.len() {
            self.coeffs[n - 1].clone()
        } else {
            C::zero()
        }
    }

    pub fn set(&mut self, n: usize, c: C) {
        self.coeffs[n - 1] = c;
    }

    /// `(n, a_n)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().map(|(k, c)| (k + 1, c))
    }

    /// `c_n = sum_{d | n} a_d b_(n/d)` for `n <= N`.
    pub fn dconv(&self, other: &Self) -> Result<Self> {
        let n = self.bound();
        if n != other.bound() {
            return Err(Error::TruncationMismatch(n, other.bound()));
        }
        let mut out = Self::zeros(n);
        for d in 1..=n {
            let a = &self.coeffs[d - 1];
            if a.is_zero() {
                continue;
            }
            for m in 1..=n / d {
                let b = &other.coeffs[m - 1];
                if !b.is_zero() {
                    let slot = &mut out.coeffs[d * m - 1];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// `c_n` alone, by enumerating the divisors of `n`.
    pub fn dconv_at(&self, other: &Self, sieve: &Sieve, n: usize) -> C {
        sieve
            .divisors(n)
            .into_iter()
            .fold(C::zero(), |acc, d| acc + self.get(d) * other.get(n / d))
    }

    /// Upper bound on the mass `sum |a_d b_m|` over pairs with `dm > N`,
    /// which the truncated convolution drops.
    pub fn truncation_defect(&self, other: &Self) -> f64 {
        let abs = |s: &Self| -> Vec<f64> { s.coeffs.iter().map(|c| c.to_c64().norm()).collect() };
        let (a, b) = (abs(self), abs(other));
        let total = a.iter().sum::<f64>() * b.iter().sum::<f64>();
        let n = a.len().min(b.len());
        let mut kept = 0.0;
        for d in 1..=n {
            if a[d - 1] == 0.0 {
                continue;
            }
            for m in 1..=n / d {
                kept += a[d - 1] * b[m - 1];
            }
        }
        (total - kept).max(0.0)
    }

    /// Dirichlet inverse up to `N`: `b_1 = 1/a_1`,
    /// `b_n = -(1/a_1) sum_{d | n, d < n} b_d a_(n/d)`.
    pub fn dinvert(&self) -> Result<Self> {
        let n = self.bound();
        if n == 0 {
            return Ok(Self::zeros(0));
        }
        let a1 = self.coeffs[0].clone();
        if a1.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv = C::one() / a1;
        let mut acc = vec![C::zero(); n];
        let mut b = Self::zeros(n);
        for d in 1..=n {
            let delta = if d == 1 { C::one() } else { C::zero() };
            let bd = (delta - acc[d - 1].clone()) * inv.clone();
            if !bd.is_zero() {
                for m in 2..=n / d {
                    let a = &self.coeffs[m - 1];
                    if !a.is_zero() {
                        acc[d * m - 1] = acc[d * m - 1].clone() + bd.clone() * a.clone();
                    }
                }
            }
            b.coeffs[d - 1] = bd;
        }
        Ok(b)
    }

    /// `D_f(y) = sum_n a_n exp(-2 pi i y log n)`.
    pub fn mellin_eval(&self, y: f64) -> Complex<f64> {
        let tau = std::f64::consts::TAU;
        self.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| c.to_c64() * Complex::from_polar(1.0, -tau * y * (n as f64).ln()))
            .sum()
    }

    /// Coefficient sum, the trace of the corresponding algebra element.
    pub fn total(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |a, c| a + c.clone())
    }
}

/// Free-function forms of the series operations.
pub fn dconv<C: Coefficient>(
    f: &IntegerSeries<C>,
    g: &IntegerSeries<C>,
) -> Result<IntegerSeries<C>> {
    f.dconv(g)
}

pub fn dinvert<C: Coefficient>(f: &IntegerSeries<C>) -> Result<IntegerSeries<C>> {
    f.dinvert()
}

pub fn mellin_eval<C: Coefficient>(f: &IntegerSeries<C>, y: f64) -> Complex<f64> {
    f.mellin_eval(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::scalar::GaussianRational;
    use num_traits::Zero;

    type S = IntegerSeries<GaussianRational>;

    fn g(n: i64) -> GaussianRational {
        Complex::new(int(n), int(0))
    }

    fn series(vals: &[i64], n: usize) -> S {
        let mut s = S::zeros(n);
        for (k, v) in vals.iter().enumerate() {
            s.set(k + 1, g(*v));
        }
        s
    }

    #[test]
    fn sieve_divisors() {
        let s = Sieve::new(100);
        assert_eq!(s.divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(s.factor(90), vec![(2, 1), (3, 2), (5, 1)]);
        assert_eq!(s.divisors(1), vec![1]);
    }

    #[test]
    fn from_algebra_cases() {
        let q = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(&q, &[(1, g(1)), (2, g(1)), (3, g(1))]);
        assert_eq!(S::from_algebra(&f, 3).unwrap(), S::ones(3));
        let h = AlgebraElement::monomial(&FieldElement::from_rational(&q, rat(1, 2)), g(1));
        assert!(matches!(
            S::from_algebra(&h, 4),
            Err(Error::NonIntegerIndex(_))
        ));
        let five = AlgebraElement::from_integer_terms(&q, &[(6, g(5))]);
        let s = S::from_algebra(&five, 8).unwrap();
        assert_eq!(s.get(6), g(5));
        assert_eq!(s.iter().filter(|(_, c)| !c.is_zero()).count(), 1);
        let zero = AlgebraElement::from_integer_terms(&q, &[(0, g(1))]);
        assert!(S::from_algebra(&zero, 4).is_err());
    }

    #[test]
    fn divisor_count_and_identity() {
        let ones = S::ones(12);
        let tau = ones.dconv(&ones).unwrap();
        assert_eq!(tau.get(6), g(4));
        assert_eq!(tau.get(12), g(6));
        let sieve = Sieve::new(12);
        assert_eq!(ones.dconv_at(&ones, &sieve, 12), g(6));
        assert_eq!(ones.dconv(&S::delta(12)).unwrap(), ones);
        assert!(matches!(
            ones.dconv(&S::ones(5)),
            Err(Error::TruncationMismatch(12, 5))
        ));
    }

    #[test]
    fn small_pair_matches_algebra() {
        let a = series(&[2, 1], 8);
        let b = series(&[1, 5], 8);
        let c = a.dconv(&b).unwrap();
        assert_eq!((c.get(1), c.get(2), c.get(4)), (g(2), g(11), g(5)));
        let alg = a.to_algebra().dirichlet_product(&b.to_algebra()).unwrap();
        assert_eq!(S::from_algebra(&alg, 8).unwrap(), c);
    }

    #[test]
    fn mobius_and_simple_inverses() {
        let b = S::ones(6).dinvert().unwrap();
        let mu: Vec<GaussianRational> = [1, -1, -1, 0, -1, 1].iter().map(|&v| g(v)).collect();
        assert_eq!(b.coeffs(), &mu[..]);
        assert_eq!(S::delta(9).dinvert().unwrap(), S::delta(9));
        let mut two = S::delta(5);
        two.set(1, g(2));
        let half = two.dinvert().unwrap();
        assert_eq!(half.get(1), Complex::new(rat(1, 2), int(0)));
        assert!(half.iter().skip(1).all(|(_, c)| c.is_zero()));
        assert!(matches!(
            series(&[0, 1], 4).dinvert(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn mellin_basics() {
        let f = series(&[3, -1, 2], 3);
        let d0 = f.mellin_eval(0.0);
        assert!((d0 - Complex::new(4.0, 0.0)).norm() < 1e-15);
        let d = S::delta(10).mellin_eval(0.77);
        assert!((d - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn defect_is_zero_when_products_fit() {
        let a = series(&[1, 1, 0, 0], 12);
        let b = series(&[1, 0, 1], 12);
        assert_eq!(a.truncation_defect(&b), 0.0);
        let c = series(&[0, 0, 0, 0, 0, 1], 12);
        assert_eq!(c.truncation_defect(&c), 1.0);
    }
}
