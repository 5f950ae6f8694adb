use num_complex::Complex;
use num_traits::Zero;

use super::{FieldElement, NumberField, Place, PlaceKind};
use crate::error::{Error, Result};
use crate::interval::CertifiedBox;
use crate::rational::{bits_for_width, pow2_neg, to_f64, Rational};
use crate::scalar::Real;

/// Starting precision of the refinement ladder, in bits.
pub const DEFAULT_START_BITS: u32 = 53;
/// Precision at which refinement gives up with `UndecidedNumerically`.
pub const DEFAULT_CAP_BITS: u32 = 2000;

/// A point of `K (x) R`: one real coordinate per real place and one complex
/// coordinate per conjugate pair (the representative embedding).
#[derive(Clone, Debug, PartialEq)]
pub struct KInfinity<F> {
    pub real: Vec<F>,
    pub complex: Vec<Complex<F>>,
}

impl<F: Real> KInfinity<F> {
    pub fn zero(signature: (usize, usize)) -> Self {
        KInfinity {
            real: vec![F::zero(); signature.0],
            complex: vec![Complex::zero(); signature.1],
        }
    }

    pub fn new(real: Vec<F>, complex: Vec<Complex<F>>) -> Self {
        KInfinity { real, complex }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.real.len(), self.complex.len())
    }

    /// Trace to R: real coordinates plus twice the real part of each pair.
    pub fn trace(&self) -> F {
        let two = F::one() + F::one();
        self.real.iter().fold(F::zero(), |acc, &x| acc + x)
            + self
                .complex
                .iter()
                .fold(F::zero(), |acc, z| acc + two * z.re)
    }

    /// Coordinatewise product.
    pub fn mul(&self, other: &Self) -> Self {
        KInfinity {
            real: self
                .real
                .iter()
                .zip(&other.real)
                .map(|(a, b)| *a * *b)
                .collect(),
            complex: self
                .complex
                .iter()
                .zip(&other.complex)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        KInfinity {
            real: self
                .real
                .iter()
                .zip(&other.real)
                .map(|(a, b)| *a + *b)
                .collect(),
            complex: self
                .complex
                .iter()
                .zip(&other.complex)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: F) -> Self {
        KInfinity {
            real: self.real.iter().map(|&a| a * c).collect(),
            complex: self.complex.iter().map(|a| a * c).collect(),
        }
    }

    /// Sum of absolute values of the coordinates, counting each pair twice.
    pub fn l1(&self) -> F {
        let two = F::one() + F::one();
        self.real.iter().fold(F::zero(), |acc, x| acc + x.abs())
            + self
                .complex
                .iter()
                .fold(F::zero(), |acc, z| acc + two * z.norm())
    }
}

/// `trace_on_infinity` as a free function.
pub fn trace_on_infinity<F: Real>(v: &KInfinity<F>) -> F {
    v.trace()
}

impl FieldElement {
    /// Certified image under `place`, of width at most `width`.
    pub fn embed(&self, place: &Place, width: &Rational) -> Result<CertifiedBox> {
        self.embed_with_cap(place, width, DEFAULT_CAP_BITS)
    }

    pub fn embed_with_cap(
        &self,
        place: &Place,
        width: &Rational,
        cap_bits: u32,
    ) -> Result<CertifiedBox> {
        if let Some(q) = self.as_rational() {
            return Ok(CertifiedBox::point(q, Rational::zero()));
        }
        let field = self.field();
        let mut bits = DEFAULT_START_BITS.max(bits_for_width(width).saturating_add(4));
        loop {
            if bits > cap_bits {
                return Err(Error::UndecidedNumerically(cap_bits));
            }
            let root = field.root_box(place, &pow2_neg(bits))?;
            let value = root.eval_poly(self.coords(), bits + 8);
            if &value.width() <= width {
                return Ok(value);
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Images at every place, in place order.
    pub fn embed_all(&self, width: &Rational) -> Result<Vec<CertifiedBox>> {
        self.field()
            .places()
            .iter()
            .map(|p| self.embed(p, width))
            .collect()
    }

    /// Floating-point image in `K (x) R`: Horner's rule in double precision
    /// at the cached generator images, then rounded to `F`.
    pub fn to_kinfinity<F: Real>(&self) -> KInfinity<F> {
        let field = self.field();
        let coords: Vec<f64> = self.coords().iter().map(to_f64).collect();
        let mut real = Vec::with_capacity(field.signature().0);
        let mut complex = Vec::with_capacity(field.signature().1);
        for (p, r) in field.places().iter().zip(field.float_roots()) {
            let v = coords
                .iter()
                .rev()
                .fold(Complex::new(0.0, 0.0), |acc, c| acc * r + c);
            let re = F::from_f64(v.re).expect("finite");
            match p.kind {
                PlaceKind::Real => real.push(re),
                PlaceKind::ComplexPair => {
                    complex.push(Complex::new(re, F::from_f64(v.im).expect("finite")))
                }
            }
        }
        KInfinity { real, complex }
    }
}

impl NumberField {
    /// Image of the whole power basis, used to map torus coordinates into `K (x) R`.
    pub fn basis_kinfinity<F: Real>(self: &std::sync::Arc<Self>) -> Vec<KInfinity<F>> {
        (0..self.degree())
            .map(|k| {
                FieldElement::new(self, self.power_coords(k))
                    .expect("length d")
                    .to_kinfinity()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use std::sync::Arc;

    #[test]
    fn embed_sqrt2_unit() {
        let k = NumberField::quadratic(2).unwrap();
        let e = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        let w = pow2_neg(80);
        let b = e.embed(&k.places()[1], &w).unwrap();
        assert!(b.width() <= w);
        // Oracle: 1 + sqrt2 lies in [2.41421356237, 2.41421356238]
        assert!(b.re.lo > rat(241421356237, 100000000000));
        assert!(b.re.hi < rat(241421356238, 100000000000));
        let neg = e.embed(&k.places()[0], &w).unwrap();
        assert!(neg.re.hi < int(0));
    }

    #[test]
    fn embed_zero_and_gaussian() {
        let gi = NumberField::quadratic(-1).unwrap();
        let z = FieldElement::zero(&gi)
            .embed(&gi.places()[0], &rat(1, 1000))
            .unwrap();
        assert_eq!(z, CertifiedBox::zero());
        let e = FieldElement::from_i64_coords(&gi, &[1, 1]).unwrap();
        let b = e.embed(&gi.places()[0], &pow2_neg(40)).unwrap();
        assert!(b.contains(&int(1), &int(1)));
    }

    #[test]
    fn trace_on_infinity_examples() {
        let v = KInfinity::new(vec![1.0f64, 2.0], vec![]);
        assert_eq!(v.trace(), 3.0);
        let w = KInfinity::new(vec![], vec![Complex::new(3.0f64, 4.0)]);
        assert_eq!(trace_on_infinity(&w), 6.0);
        let k = NumberField::quadratic(2).unwrap();
        let e = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        let t: f64 = e.to_kinfinity().trace();
        assert!((t - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cap_triggers_undecided() {
        let k: Arc<NumberField> = NumberField::quadratic(2).unwrap();
        let e = k.generator();
        let err = e
            .embed_with_cap(&k.places()[0], &pow2_neg(300), 100)
            .unwrap_err();
        assert_eq!(err, Error::UndecidedNumerically(100));
    }
}
