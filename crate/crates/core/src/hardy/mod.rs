//! Evaluation of characters and graded Fourier series on `K_inf`, on the
//! hyperbolization `H_K`, and on the Minkowski torus.
//!
//! A real place carries `tau = x + it` (`t > 0`); a complex pair carries
//! `(u, v) = (x + it, s + iy)` with `t, s > 0`, so that `z = x + iy` and
//! `b = s + it`. A term `a z^alpha` evaluates to
//!
//! ```text
//! prod_real  exp(2 pi i alpha x) exp(-2 pi alpha t)
//! prod_pairs exp(4 pi i Re(alpha z)) exp(-4 pi Im(alpha b))
//! ```
//!
//! after the component's conjugation: `t -> theta t` at a real place and
//! `b -> e(v) b` at a complex pair.

mod ladder;
mod quadrature;

use num_complex::Complex;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
#[cfg(test)]
use crate::numberfield::NumberField;
use crate::numberfield::{FieldElement, KInfinity};
use crate::scalar::{Coefficient, Real};
use crate::signs::{grade, ComplexSign, GradedDecomposition, RealSign, SignVector};

pub use ladder::{decay_ladder, write_ladder_csv, LadderRow};
pub use quadrature::{frequency_vector, torus_inner_product, InnerProductReport};

/// Value with a first-order floating-point error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult<F> {
    pub value: Complex<F>,
    pub error_bound: F,
}

impl<F: Real> EvalResult<F> {
    pub fn exact(value: Complex<F>) -> Self {
        EvalResult {
            value,
            error_bound: F::zero(),
        }
    }

    /// `|value - other| <= error_bound + other_bound + slack`.
    pub fn agrees_with(&self, other: &EvalResult<F>, slack: F) -> bool {
        (self.value - other.value).norm() <= self.error_bound + other.error_bound + slack
    }
}

/// A point of the hyperbolization `H_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperPoint<F> {
    /// `tau = x + it` per real place.
    pub real: Vec<Complex<F>>,
    /// `(u, v) = (x + it, s + iy)` per complex pair.
    pub complex: Vec<(Complex<F>, Complex<F>)>,
}

impl<F: Real> HyperPoint<F> {
    pub fn new(real: Vec<Complex<F>>, complex: Vec<(Complex<F>, Complex<F>)>) -> Result<Self> {
        let p = HyperPoint { real, complex };
        let ok = p.real.iter().all(|tau| tau.im > F::zero())
            && p.complex
                .iter()
                .all(|(u, v)| u.im > F::zero() && v.re > F::zero());
        if ok {
            Ok(p)
        } else {
            Err(Error::InvalidPoint(
                "every t and s coordinate must be strictly positive".into(),
            ))
        }
    }

    /// The point over boundary `x` with every height coordinate equal to `t`.
    pub fn above(x: &KInfinity<F>, t: F) -> Result<Self> {
        Self::new(
            x.real.iter().map(|&xr| Complex::new(xr, t)).collect(),
            x.complex
                .iter()
                .map(|z| (Complex::new(z.re, t), Complex::new(t, z.im)))
                .collect(),
        )
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.real.len(), self.complex.len())
    }

    /// The boundary point `(x_nu; z_mu)` in `K_inf`.
    pub fn boundary(&self) -> KInfinity<F> {
        KInfinity::new(
            self.real.iter().map(|tau| tau.re).collect(),
            self.complex
                .iter()
                .map(|(u, v)| Complex::new(u.re, v.im))
                .collect(),
        )
    }

    /// `b = s + it` at complex pair `j`.
    pub fn b(&self, j: usize) -> Complex<F> {
        let (u, v) = self.complex[j];
        Complex::new(v.re, u.im)
    }
}

/// A point of the torus `K_inf / Z[a]`, stored by its coordinates in `[0, 1)`
/// with respect to the image of the power basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint<F> {
    coords: Vec<F>,
}

impl<F: Real> TorusPoint<F> {
    pub fn new(coords: Vec<F>) -> Self {
        TorusPoint {
            coords: coords
                .into_iter()
                .map(|c| {
                    let r = c - c.floor();
                    if r >= F::one() {
                        F::zero()
                    } else {
                        r
                    }
                })
                .collect(),
        }
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// `sum_j u_j a^j` embedded in `K_inf`.
    pub fn to_kinfinity(&self, basis: &[KInfinity<F>]) -> KInfinity<F> {
        let sig = basis.first().map(|b| b.signature()).unwrap_or((0, 0));
        self.coords
            .iter()
            .zip(basis)
            .fold(KInfinity::zero(sig), |acc, (&u, b)| acc.add(&b.scale(u)))
    }
}

fn c2f<F: Real, C: Coefficient>(c: &C) -> Complex<F> {
    let v = c.to_c64();
    Complex::new(F::from_f64_lossy(v.re), F::from_f64_lossy(v.im))
}

fn two_pi<F: Real>() -> F {
    F::TAU()
}

/// `exp(2 pi i Tr(alpha z))`.
pub fn character_eval<F: Real>(alpha: &FieldElement, z: &KInfinity<F>) -> EvalResult<F> {
    character_eval_embedded(&alpha.to_kinfinity::<F>(), z)
}

/// Character evaluation with a precomputed embedding of the index.
pub fn character_eval_embedded<F: Real>(alpha: &KInfinity<F>, z: &KInfinity<F>) -> EvalResult<F> {
    let two = F::one() + F::one();
    let (mut phase, mut l1) = (F::zero(), F::zero());
    for (a, b) in alpha.real.iter().zip(&z.real) {
        let p = *a * *b;
        phase = phase + p;
        l1 = l1 + p.abs();
    }
    for (a, b) in alpha.complex.iter().zip(&z.complex) {
        let p = a * b;
        phase = phase + two * p.re;
        l1 = l1 + two * p.norm();
    }
    let value = Complex::from_polar(F::one(), two_pi::<F>() * phase);
    let n = F::from_usize(alpha.real.len() + 2 * alpha.complex.len() + 4).expect("small");
    let err = two_pi::<F>() * F::unit_roundoff() * n * (l1 + phase.abs() + F::one());
    EvalResult {
        value,
        error_bound: err,
    }
}

/// Boundary value `sum a_alpha exp(2 pi i Tr(alpha x))`.
pub fn boundary_eval<F: Real, C: Coefficient>(
    f: &AlgebraElement<C>,
    x: &KInfinity<F>,
) -> EvalResult<F> {
    let mut value = Complex::new(F::zero(), F::zero());
    let mut err = F::zero();
    let mut mass = F::zero();
    for (alpha, c) in f.terms() {
        let a: Complex<F> = c2f(c);
        let ch = character_eval(alpha, x);
        value = value + a * ch.value;
        err = err + a.norm() * ch.error_bound;
        mass = mass + a.norm();
    }
    let n = F::from_usize(f.len() + 1).expect("small");
    EvalResult {
        value,
        error_bound: err + n * F::unit_roundoff() * mass,
    }
}

/// One term at a (conjugated) hyperbolic point: value and first-order error.
fn term_at<F: Real>(alpha: &KInfinity<F>, p: &HyperPoint<F>, v: &SignVector) -> (Complex<F>, F) {
    let tp = two_pi::<F>();
    let two = F::one() + F::one();
    let mut phase = F::zero();
    let mut decay = F::zero();
    for (i, (&a, tau)) in alpha.real.iter().zip(&p.real).enumerate() {
        let theta = match v.real.get(i) {
            Some(RealSign::Minus) => -F::one(),
            _ => F::one(),
        };
        phase = phase + a * tau.re;
        decay = decay + a * theta * tau.im;
    }
    for (j, a) in alpha.complex.iter().enumerate() {
        let (u, w) = p.complex[j];
        let z = Complex::new(u.re, w.im);
        let rot = v.complex.get(j).map(|c| c.e()).unwrap_or(ComplexSign::PLUS);
        let b = rotate(p.b(j), rot.quarter());
        phase = phase + two * (a * z).re;
        decay = decay + two * (a * b).im;
    }
    let modulus = (-tp * decay).exp();
    let value = Complex::from_polar(modulus, tp * phase);
    let n = F::from_usize(p.real.len() + 4 * p.complex.len() + 4).expect("small");
    let err = modulus * tp * F::unit_roundoff() * n * (phase.abs() + decay.abs() + F::one());
    (value, err)
}

/// Multiply by `i^k`.
fn rotate<F: Real>(b: Complex<F>, k: u8) -> Complex<F> {
    match k % 4 {
        0 => b,
        1 => Complex::new(-b.im, b.re),
        2 => -b,
        _ => Complex::new(b.im, -b.re),
    }
}

/// Evaluate the graded series at `p`: each component with its own
/// conjugation, plus the constant term.
pub fn series_eval_hyper<F: Real, C: Coefficient>(
    f: &AlgebraElement<C>,
    graded: &GradedDecomposition<C>,
    p: &HyperPoint<F>,
) -> Result<EvalResult<F>> {
    if **f.field() != **graded.field() {
        return Err(Error::FieldMismatch);
    }
    if p.signature() != f.field().signature() {
        return Err(Error::InvalidPoint(format!(
            "point has signature {:?}, field has {:?}",
            p.signature(),
            f.field().signature()
        )));
    }
    let mut value: Complex<F> = c2f(graded.constant());
    let mut err = F::zero();
    let mut mass = value.norm();
    for (v, comp) in graded.components() {
        for (alpha, c) in comp.terms() {
            let a: Complex<F> = c2f(c);
            let (t, e) = term_at(&alpha.to_kinfinity::<F>(), p, v);
            value = value + a * t;
            err = err + a.norm() * e;
            mass = mass + (a * t).norm();
        }
    }
    let n = F::from_usize(f.len() + 1).expect("small");
    Ok(EvalResult {
        value,
        error_bound: err + n * F::unit_roundoff() * mass,
    })
}

/// Grade `f` and evaluate it at `p`.
pub fn eval_hyper<F: Real, C: Coefficient>(
    f: &AlgebraElement<C>,
    p: &HyperPoint<F>,
) -> Result<EvalResult<F>> {
    let g = grade(f)?;
    series_eval_hyper(f, &g, p)
}

/// Every real embedding positive and every pair representative in the open
/// first quadrant.
pub fn in_positive_cone(alpha: &FieldElement) -> Result<bool> {
    if alpha.is_zero() {
        return Ok(false);
    }
    let v = crate::signs::sign_of(alpha)?;
    Ok(v.real.iter().all(|s| *s == RealSign::Plus)
        && v.complex.iter().all(|s| *s == ComplexSign::PLUS_E))
}

/// Support (away from the constant term) inside the positive cone.
pub fn hardy_membership<C: Coefficient>(f: &AlgebraElement<C>) -> Result<bool> {
    for alpha in f.support() {
        if !alpha.is_zero() && !in_positive_cone(alpha)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sqrt(sum |a_alpha|^2)`.
pub fn l2_norm<C: Coefficient>(f: &AlgebraElement<C>) -> f64 {
    f.terms().map(|(_, c)| c.norm_sqr_f64()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::scalar::GaussianRational;

    fn one() -> GaussianRational {
        Complex::new(int(1), int(0))
    }

    #[test]
    fn character_examples() {
        let q = NumberField::rationals();
        let one_idx = FieldElement::one(&q);
        let z = KInfinity::new(vec![0.5f64], vec![]);
        let r = character_eval(&one_idx, &z);
        assert!((r.value - Complex::new(-1.0, 0.0)).norm() <= r.error_bound + 1e-15);
        let zero = KInfinity::zero((1, 0));
        assert_eq!(
            character_eval(&one_idx, &zero).value,
            Complex::new(1.0, 0.0)
        );

        let k = NumberField::quadratic(2).unwrap();
        let alpha = k.generator().scale(&rat(1, 4));
        for (a, b) in [(1, 0), (0, 1), (3, -2), (-5, 7)] {
            let lattice = FieldElement::from_i64_coords(&k, &[a, b]).unwrap();
            let z: KInfinity<f64> = lattice.to_kinfinity();
            let r = character_eval(&alpha, &z);
            assert!((r.value - Complex::new(1.0, 0.0)).norm() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn hyper_decay_over_q() {
        let q = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(&q, &[(1, one())]);
        let p = HyperPoint::new(vec![Complex::new(0.0f64, 1.0)], vec![]).unwrap();
        let r = eval_hyper(&f, &p).unwrap();
        let want = (-2.0 * std::f64::consts::PI).exp();
        assert!((r.value.re - want).abs() < 1e-12 && r.value.im.abs() < 1e-12);
        let g = AlgebraElement::from_integer_terms(&q, &[(-1, one())]);
        let r = eval_hyper(&g, &p).unwrap();
        assert!((r.value.re - want).abs() < 1e-12);
        let c = AlgebraElement::from_integer_terms(&q, &[(0, Complex::new(int(3), int(-1)))]);
        assert_eq!(eval_hyper(&c, &p).unwrap().value, Complex::new(3.0, -1.0));
    }

    #[test]
    fn invalid_point() {
        assert!(HyperPoint::new(vec![Complex::new(0.0f64, 0.0)], vec![]).is_err());
        assert!(HyperPoint::<f64>::new(
            vec![],
            vec![(Complex::new(0.0, 1.0), Complex::new(-1.0, 0.0))]
        )
        .is_err());
    }

    #[test]
    fn cone_and_membership() {
        let k = NumberField::quadratic(2).unwrap();
        assert!(in_positive_cone(&FieldElement::from_i64_coords(&k, &[3, 1]).unwrap()).unwrap());
        assert!(!in_positive_cone(&FieldElement::from_i64_coords(&k, &[1, 1]).unwrap()).unwrap());
        let gi = NumberField::quadratic(-1).unwrap();
        assert!(!in_positive_cone(&gi.generator()).unwrap());
        let f =
            AlgebraElement::monomial(&FieldElement::from_i64_coords(&gi, &[1, 1]).unwrap(), one());
        assert!(hardy_membership(&f).unwrap());
        let q = NumberField::rationals();
        assert!(hardy_membership(&AlgebraElement::from_integer_terms(
            &q,
            &[(1, one()), (2, one())]
        ))
        .unwrap());
        assert!(
            !hardy_membership(&AlgebraElement::from_integer_terms(&q, &[(-1, one())])).unwrap()
        );
    }

    #[test]
    fn l2_examples() {
        let q = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(
            &q,
            &[
                (1, Complex::new(int(3), int(0))),
                (2, Complex::new(int(4), int(0))),
            ],
        );
        assert!((l2_norm(&f) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn complex_pair_term_matches_formula() {
        // Q(i), alpha = 1 + 2i, z = 0.3 + 0.1i, b = 0.5 + 0.25i
        let k = NumberField::quadratic(-1).unwrap();
        let alpha = FieldElement::from_i64_coords(&k, &[1, 2]).unwrap();
        let f = AlgebraElement::monomial(&alpha, one());
        let p = HyperPoint::new(
            vec![],
            vec![(Complex::new(0.3, 0.25), Complex::new(0.5, 0.1))],
        )
        .unwrap();
        let r = eval_hyper(&f, &p).unwrap();
        let a = Complex::new(1.0f64, 2.0);
        let z = Complex::new(0.3, 0.1);
        let b = Complex::new(0.5, 0.25);
        let tp = 2.0 * std::f64::consts::PI;
        let want = Complex::from_polar((-2.0 * tp * (a * b).im).exp(), 2.0 * tp * (a * z).re);
        assert!((r.value - want).norm() < 1e-14);
    }
}
