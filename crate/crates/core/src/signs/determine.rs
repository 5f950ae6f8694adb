use std::cmp::Ordering;
use std::collections::HashMap;

use super::{ComplexSign, RealSign, SignVector};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, Place, PlaceKind, DEFAULT_CAP_BITS, DEFAULT_START_BITS};
use crate::rational::{pow2_neg, Rational};
use crate::roots::{RootRef, RootSystem};

/// Certified sign vector of a nonzero field element.
///
/// Axis membership at a complex place is decided exactly: `mu(alpha)` is real
/// iff its box, once refined, meets only one root box of the minimal
/// polynomial of `alpha` and that root is real; it is purely imaginary iff
/// `mu(alpha^2)` is real and negative.
pub fn sign_of(alpha: &FieldElement) -> Result<SignVector> {
    sign_of_with_cap(alpha, DEFAULT_CAP_BITS)
}

pub fn sign_of_with_cap(alpha: &FieldElement, cap_bits: u32) -> Result<SignVector> {
    if alpha.is_zero() {
        return Err(Error::Signless);
    }
    let field = alpha.field();
    let (r, s) = field.signature();
    if let Some(q) = alpha.as_rational() {
        let pos = q > Rational::from_integer(0.into());
        return Ok(SignVector {
            real: vec![if pos { RealSign::Plus } else { RealSign::Minus }; r],
            complex: vec![
                if pos {
                    ComplexSign::PLUS
                } else {
                    ComplexSign::MINUS
                };
                s
            ],
        });
    }
    if let Some(v) = quadratic_sign(alpha).or_else(|| float_sign(alpha)) {
        return Ok(v);
    }
    certified_sign(alpha, cap_bits)
}

/// Signs read off a double precision Horner evaluation, accepted only when every
/// component clears a rigorous bound on the total error. Axis cases at complex
/// places are never decided here.
fn float_sign(alpha: &FieldElement) -> Option<SignVector> {
    const EPS: f64 = f64::EPSILON / 2.0;
    let field = alpha.field();
    let coeffs: Vec<f64> = alpha.coords().iter().map(crate::rational::to_f64).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let d = coeffs.len() as f64;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for (place, root) in field.places().iter().zip(field.float_roots()) {
        let v = coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex::new(0.0, 0.0), |acc, c| acc * root + c);
        // True root lies within 2^-63 of the rounded box midpoint, plus rounding.
        let delta = 2f64.powi(-63) + 2.0 * EPS * (root.norm() + 1.0);
        let r = root.norm() + delta;
        let (mut mag, mut deriv, mut pw) = (0.0, 0.0, 1.0);
        for (j, c) in coeffs.iter().enumerate() {
            if j > 0 {
                deriv += j as f64 * c.abs() * pw / r;
            }
            mag += c.abs() * pw;
            pw *= r;
        }
        let bound = 2.0 * ((16.0 * (d + 1.0) + 1.0) * EPS * mag * 1.5 + delta * deriv) + 1e-300;
        if !bound.is_finite() {
            return None;
        }
        let decide = |x: f64| (x.abs() > bound).then_some(x > 0.0);
        match place.kind {
            PlaceKind::Real => real.push(if decide(v.re)? {
                RealSign::Plus
            } else {
                RealSign::Minus
            }),
            PlaceKind::ComplexPair => {
                let (re, im) = (decide(v.re)?, decide(v.im)?);
                complex.push(ComplexSign::of_f64(
                    if re { 1.0 } else { -1.0 },
                    if im { 1.0 } else { -1.0 },
                )?);
            }
        }
    }
    Some(SignVector { real, complex })
}

/// Sign by interval refinement of the embeddings, for any degree.
fn certified_sign(alpha: &FieldElement, cap_bits: u32) -> Result<SignVector> {
    let field = alpha.field();
    let (r, s) = field.signature();
    let mut axis = AxisTester::new(alpha, cap_bits);
    let mut real = Vec::with_capacity(r);
    let mut complex = Vec::with_capacity(s);
    for place in field.places() {
        match place.kind {
            PlaceKind::Real => {
                let sgn = refine_until(alpha, place, cap_bits, |b| b.re.strict_sign())?;
                real.push(if sgn == Ordering::Greater {
                    RealSign::Plus
                } else {
                    RealSign::Minus
                });
            }
            PlaceKind::ComplexPair => complex.push(complex_sign(alpha, place, &mut axis)?),
        }
    }
    Ok(SignVector { real, complex })
}

/// Exact signs in a quadratic field `x^2 + bx + c`: the embeddings of
/// `x + y a` are `(u +- v sqrt(D)) / 2` with `u = 2x - by`, `v = y`, `D = b^2 - 4c`.
fn quadratic_sign(alpha: &FieldElement) -> Option<SignVector> {
    let p = alpha.field().minpoly();
    if p.degree() != Some(2) {
        return None;
    }
    let (b, c) = (p.coeff(1), p.coeff(0));
    let disc = b.clone() * b.clone() - Rational::from_integer(4.into()) * c;
    let (x, y) = (&alpha.coords()[0], &alpha.coords()[1]);
    let u = Rational::from_integer(2.into()) * x - b * y;
    let zero = Rational::from_integer(0.into());
    if disc > zero {
        // sign of u + v sqrt(D)
        let sign = |v: &Rational| {
            let (su, sv) = (u.cmp(&zero), v.cmp(&zero));
            if su == sv || sv == Ordering::Equal {
                return su;
            }
            if su == Ordering::Equal {
                return sv;
            }
            let dominant = (u.clone() * u.clone()).cmp(&(v.clone() * v.clone() * disc.clone()));
            if dominant == Ordering::Greater { su } else { sv }
        };
        let to_real = |o: Ordering| if o == Ordering::Greater { RealSign::Plus } else { RealSign::Minus };
        // places ascend: the smaller root carries -sqrt(D)
        Some(SignVector {
            real: vec![to_real(sign(&-y.clone())), to_real(sign(y))],
            complex: vec![],
        })
    } else {
        let s = ComplexSign::from_parts(u.cmp(&zero), y.cmp(&zero))?;
        Some(SignVector {
            real: vec![],
            complex: vec![s],
        })
    }
}

fn complex_sign(alpha: &FieldElement, place: &Place, axis: &mut AxisTester) -> Result<ComplexSign> {
    let b = alpha.embed_with_cap(place, &pow2_neg(DEFAULT_START_BITS), axis.cap_bits)?;
    if let (Some(re), Some(im)) = (b.re.strict_sign(), b.im.strict_sign()) {
        return Ok(ComplexSign::from_parts(re, im).expect("nonzero"));
    }
    if let Some(sgn) = axis.real_sign(place, false)? {
        return Ok(ComplexSign::from_parts(sgn, Ordering::Equal).expect("nonzero"));
    }
    if axis.real_sign(place, true)? == Some(Ordering::Less) {
        let im = refine_until(alpha, place, axis.cap_bits, |b| b.im.strict_sign())?;
        return Ok(ComplexSign::from_parts(Ordering::Equal, im).expect("nonzero"));
    }
    refine_until(alpha, place, axis.cap_bits, |b| {
        ComplexSign::from_parts(b.re.strict_sign()?, b.im.strict_sign()?)
    })
}

/// Refine the embedding of `alpha` at `place` until `decide` succeeds.
fn refine_until<T>(
    alpha: &FieldElement,
    place: &Place,
    cap_bits: u32,
    decide: impl Fn(&crate::interval::CertifiedBox) -> Option<T>,
) -> Result<T> {
    let mut bits = DEFAULT_START_BITS;
    loop {
        let b = alpha.embed_with_cap(place, &pow2_neg(bits), cap_bits)?;
        if let Some(t) = decide(&b) {
            return Ok(t);
        }
        if bits >= cap_bits {
            return Err(Error::UndecidedNumerically(cap_bits));
        }
        bits = bits.saturating_mul(2).min(cap_bits);
    }
}

/// Lazily built root systems for the minimal polynomials of `alpha` and `alpha^2`.
struct AxisTester {
    alpha: Option<(FieldElement, Option<RootSystem>)>,
    square: Option<(FieldElement, Option<RootSystem>)>,
    cap_bits: u32,
    base: FieldElement,
}

impl AxisTester {
    fn new(alpha: &FieldElement, cap_bits: u32) -> Self {
        AxisTester {
            alpha: None,
            square: None,
            cap_bits,
            base: alpha.clone(),
        }
    }

    /// If the image of `alpha` (or of `alpha^2`) at `place` is real, its sign.
    fn real_sign(&mut self, place: &Place, square: bool) -> Result<Option<Ordering>> {
        let cap = self.cap_bits;
        let slot = if square {
            &mut self.square
        } else {
            &mut self.alpha
        };
        if slot.is_none() {
            let e = if square {
                &self.base * &self.base
            } else {
                self.base.clone()
            };
            let sys = match e.as_rational() {
                Some(_) => None,
                None => Some(RootSystem::isolate(&e.minimal_polynomial())?),
            };
            *slot = Some((e, sys));
        }
        let (e, sys) = slot.as_mut().expect("initialized");
        if let Some(q) = e.as_rational() {
            return Ok(Some(q.cmp(&Rational::from_integer(0.into()))));
        }
        let sys = sys.as_mut().expect("irrational element has a root system");
        let mut bits = DEFAULT_START_BITS;
        loop {
            let w = pow2_neg(bits);
            let b = e.embed_with_cap(place, &w, cap)?;
            sys.refine_all(&w)?;
            let hits = sys.candidates(&b);
            match hits.as_slice() {
                [RootRef::Real(i)] => {
                    let i = *i;
                    let mut rb = bits;
                    loop {
                        sys.refine(RootRef::Real(i), &pow2_neg(rb))?;
                        if let Some(s) = sys.box_of(RootRef::Real(i)).re.strict_sign() {
                            return Ok(Some(s));
                        }
                        if rb >= cap {
                            return Err(Error::UndecidedNumerically(cap));
                        }
                        rb = rb.saturating_mul(2).min(cap);
                    }
                }
                [_] => return Ok(None),
                [] => {
                    return Err(Error::RootIsolation(
                        "embedding box meets no root of the minimal polynomial".into(),
                    ))
                }
                _ => {}
            }
            if bits >= cap {
                return Err(Error::UndecidedNumerically(cap));
            }
            bits = bits.saturating_mul(2).min(cap);
        }
    }
}

/// Sign computation with a cache keyed by field element, for grading many terms.
#[derive(Default)]
pub struct Grader {
    cache: HashMap<FieldElement, SignVector>,
    cap_bits: Option<u32>,
}

impl Grader {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap_bits: u32) -> Self {
        Grader {
            cache: HashMap::new(),
            cap_bits: Some(cap_bits),
        }
    }

    pub fn sign(&mut self, alpha: &FieldElement) -> Result<SignVector> {
        if let Some(v) = self.cache.get(alpha) {
            return Ok(v.clone());
        }
        let v = sign_of_with_cap(alpha, self.cap_bits.unwrap_or(DEFAULT_CAP_BITS))?;
        self.cache.insert(alpha.clone(), v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::poly::Polynomial;
    use crate::rational::rat;

    #[test]
    fn quadratic_real() {
        let k = NumberField::quadratic(2).unwrap();
        let e = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        // places ascending: -sqrt2 then +sqrt2, so 1+sqrt2 -> (-, +)
        let v = sign_of(&e).unwrap();
        assert_eq!(v.real, vec![RealSign::Minus, RealSign::Plus]);
        assert_eq!(
            sign_of(&FieldElement::zero(&k)).unwrap_err(),
            Error::Signless
        );
    }

    #[test]
    fn gaussian_axes_and_quadrants() {
        let k = NumberField::quadratic(-1).unwrap();
        let i = k.generator();
        assert_eq!(sign_of(&i).unwrap().complex, vec![ComplexSign::SQRT_MINUS]);
        let z = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        assert_eq!(sign_of(&z).unwrap().complex, vec![ComplexSign::PLUS_E]);
        let m = FieldElement::from_i64_coords(&k, &[0, -3]).unwrap();
        assert_eq!(
            sign_of(&m).unwrap().complex,
            vec![ComplexSign::MINUS_SQRT_MINUS]
        );
        assert_eq!(
            sign_of(&FieldElement::from_i64(&k, -2)).unwrap().complex,
            vec![ComplexSign::MINUS]
        );
    }

    #[test]
    fn axis_elements_in_cyclotomic_field() {
        // zeta5 + zeta5^-1 is real at every complex place; zeta5 - zeta5^-1 is imaginary.
        let k = NumberField::cyclotomic(5).unwrap();
        let z = k.generator();
        let zi = z.inv().unwrap();
        let re = &z + &zi;
        let v = sign_of(&re).unwrap();
        assert!(v.is_singular_homogeneous());
        assert!(v.complex.iter().all(|c| c.quarter() % 2 == 0));
        let im = &z - &zi;
        let w = sign_of(&im).unwrap();
        assert!(w
            .complex
            .iter()
            .all(|c| c.quarter() % 2 == 1 && c.e() == *c));
    }

    #[test]
    fn float_filter_agrees_with_refinement() {
        let fields = [
            NumberField::cyclotomic(5).unwrap(),
            NumberField::cyclotomic(8).unwrap(),
            NumberField::new(Polynomial::from_i64(&[-2, 0, 0, 1])).unwrap(),
        ];
        let mut decided = 0;
        for k in &fields {
            for seed in 0..150i64 {
                let coords: Vec<i64> = (0..k.degree() as i64)
                    .map(|j| (seed * 7919 + j * 104729).rem_euclid(9) - 4)
                    .collect();
                let a = FieldElement::from_i64_coords(k, &coords).unwrap();
                if a.is_zero() || a.as_rational().is_some() {
                    continue;
                }
                if let Some(v) = float_sign(&a) {
                    decided += 1;
                    assert_eq!(v, certified_sign(&a, 256).unwrap(), "{a}");
                }
            }
        }
        assert!(decided > 100);
    }

    #[test]
    fn quadratic_shortcut_matches_refinement() {
        for n in [2, 3, -1, -3, 5, -7] {
            let k = NumberField::quadratic(n).unwrap();
            for x in -6..=6 {
                for y in -6..=6 {
                    for den in [1, 3] {
                        let a = FieldElement::new(&k, vec![rat(x, den), rat(y, 2)]).unwrap();
                        if a.is_zero() || a.as_rational().is_some() {
                            continue;
                        }
                        assert_eq!(quadratic_sign(&a).unwrap(), certified_sign(&a, 256).unwrap(), "{a} in Q(sqrt {n})");
                    }
                }
            }
        }
        // non-monic-normalized minimal polynomial x^2 + x + 1 (b != 0)
        let k = NumberField::new(Polynomial::from_i64(&[1, 1, 1])).unwrap();
        for x in -4..=4 {
            for y in [-3, -1, 1, 2] {
                let a = FieldElement::from_i64_coords(&k, &[x, y]).unwrap();
                assert_eq!(quadratic_sign(&a).unwrap(), certified_sign(&a, 256).unwrap(), "{a}");
            }
        }
        let k = NumberField::new(Polynomial::from_i64(&[-1, 1, 1])).unwrap();
        for x in -4..=4 {
            for y in [-3, -1, 1, 2] {
                let a = FieldElement::from_i64_coords(&k, &[x, y]).unwrap();
                assert_eq!(quadratic_sign(&a).unwrap(), certified_sign(&a, 256).unwrap(), "{a}");
            }
        }
    }

    #[test]
    fn splitting_field_of_cube_root_two() {
        // x^6 + 108 has root cbrt2 * sqrt(-3); cbrt2 = a^4 / 18.
        let k = NumberField::new(Polynomial::from_i64(&[108, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(k.signature(), (0, 3));
        let a = k.generator();
        let c = a.pow(4).unwrap().scale(&crate::rational::rat(1, 18));
        assert_eq!(c.minimal_polynomial(), Polynomial::from_i64(&[-2, 0, 0, 1]));
        let mut v = sign_of(&c).unwrap().complex;
        v.sort();
        let mut want = vec![
            ComplexSign::PLUS,
            ComplexSign::SQRT_MINUS_E,
            ComplexSign::MINUS_E,
        ];
        want.sort();
        assert_eq!(v, want);
    }
}
