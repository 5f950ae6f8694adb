//! Random field elements and algebra elements for property suites.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::rat;
use crate::scalar::{GaussianRational, Real};

/// Shape of sampled indices: integer numerators in `[-height, height]` over a
/// common denominator in `1..=max_den`.
#[derive(Clone, Copy, Debug)]
pub struct IndexShape {
    pub height: i64,
    pub max_den: i64,
}

impl Default for IndexShape {
    fn default() -> Self {
        IndexShape {
            height: 20,
            max_den: 1,
        }
    }
}

pub fn random_index<R: Rng + ?Sized>(
    field: &Arc<NumberField>,
    rng: &mut R,
    shape: IndexShape,
) -> FieldElement {
    let den = rng.gen_range(1..=shape.max_den.max(1));
    let coords = (0..field.degree())
        .map(|_| rat(rng.gen_range(-shape.height..=shape.height), den))
        .collect();
    FieldElement::new(field, coords).expect("length matches degree")
}

/// Random nonzero index in the inverse different, with dual coordinates in
/// `[-height, height]`.
pub fn random_dual_index<R: Rng + ?Sized>(
    field: &Arc<NumberField>,
    rng: &mut R,
    height: i64,
) -> FieldElement {
    loop {
        let m: Vec<i64> = (0..field.degree())
            .map(|_| rng.gen_range(-height..=height))
            .collect();
        if m.iter().any(|&x| x != 0) {
            return field.from_dual_coords(&m);
        }
    }
}

/// Gaussian integer with parts in `[-h, h]`, not zero.
pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, h: i64) -> GaussianRational {
    loop {
        let (a, b) = (rng.gen_range(-h..=h), rng.gen_range(-h..=h));
        if a != 0 || b != 0 {
            return Complex::new(rat(a, 1), rat(b, 1));
        }
    }
}

/// Exact element with between 1 and `max_terms` terms.
pub fn random_exact<R: Rng + ?Sized>(
    field: &Arc<NumberField>,
    rng: &mut R,
    max_terms: usize,
    shape: IndexShape,
) -> AlgebraElement<GaussianRational> {
    let n = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..n)
        .map(|_| (random_index(field, rng, shape), random_gaussian(rng, 5)))
        .collect();
    AlgebraElement::from_terms(field, terms).expect("indices belong to field")
}

/// Exact element with no constant term.
pub fn random_exact_nonconstant<R: Rng + ?Sized>(
    field: &Arc<NumberField>,
    rng: &mut R,
    max_terms: usize,
    shape: IndexShape,
) -> AlgebraElement<GaussianRational> {
    random_exact(field, rng, max_terms, shape).filter(|a| !a.is_zero())
}

/// Float element with coefficients uniform in the unit square.
pub fn random_approx<F: Real, R: Rng + ?Sized>(
    field: &Arc<NumberField>,
    rng: &mut R,
    max_terms: usize,
    shape: IndexShape,
) -> AlgebraElement<Complex<F>>
where
    Complex<F>: crate::scalar::Coefficient,
{
    let n = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let c = Complex::new(
                F::from_f64_lossy(rng.gen_range(-1.0..1.0)),
                F::from_f64_lossy(rng.gen_range(-1.0..1.0)),
            );
            (random_index(field, rng, shape), c)
        })
        .collect();
    AlgebraElement::from_terms(field, terms).expect("indices belong to field")
}

/// Exact element supported on the positive cone of `Q`: indices `p/q > 0`.
pub fn random_positive_rational_series<R: Rng + ?Sized>(
    rng: &mut R,
    max_terms: usize,
    height: i64,
) -> AlgebraElement<GaussianRational> {
    let q = NumberField::rationals();
    let n = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let a = rat(rng.gen_range(1..=height), rng.gen_range(1..=4));
            (FieldElement::from_rational(&q, a), random_gaussian(rng, 3))
        })
        .collect();
    AlgebraElement::from_terms(&q, terms).expect("indices belong to field")
}
