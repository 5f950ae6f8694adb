use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{Grader, SignVector};
use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::format_rational;
use crate::scalar::{Coefficient, GaussianRational};

/// `(F_v; F_0)`: the terms of an algebra element split by the sign vector of
/// their index, plus the constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDecomposition<C: Coefficient> {
    field: Arc<NumberField>,
    components: BTreeMap<SignVector, AlgebraElement<C>>,
    constant: C,
}

impl<C: Coefficient> GradedDecomposition<C> {
    pub fn components(&self) -> &BTreeMap<SignVector, AlgebraElement<C>> {
        &self.components
    }

    /// Component for `v` (zero if no index has that sign).
    pub fn component(&self, v: &SignVector) -> AlgebraElement<C> {
        self.components
            .get(v)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(&self.field))
    }

    pub fn constant(&self) -> &C {
        &self.constant
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Sum of the components and the constant term.
    pub fn reassemble(&self) -> AlgebraElement<C> {
        let mut out =
            AlgebraElement::monomial(&FieldElement::zero(&self.field), self.constant.clone());
        for c in self.components.values() {
            out = out.checked_add(c).expect("same field");
        }
        out
    }
}

/// Grade `f` with a fresh sign cache.
pub fn grade<C: Coefficient>(f: &AlgebraElement<C>) -> Result<GradedDecomposition<C>> {
    grade_with(f, &mut Grader::new())
}

pub(crate) fn grade_with<C: Coefficient>(
    f: &AlgebraElement<C>,
    grader: &mut Grader,
) -> Result<GradedDecomposition<C>> {
    let field = f.field();
    let mut buckets: BTreeMap<SignVector, Vec<(FieldElement, C)>> = BTreeMap::new();
    let mut constant = C::zero();
    for (alpha, c) in f.terms() {
        if alpha.is_zero() {
            constant = c.clone();
        } else {
            buckets
                .entry(grader.sign(alpha)?)
                .or_default()
                .push((alpha.clone(), c.clone()));
        }
    }
    let components = buckets
        .into_iter()
        .map(|(v, terms)| {
            (
                v,
                AlgebraElement::from_terms(field, terms).expect("same field"),
            )
        })
        .collect();
    Ok(GradedDecomposition {
        field: Arc::clone(field),
        components,
        constant,
    })
}

impl<C: Coefficient> AlgebraElement<C> {
    /// Graded decomposition reusing a caller-held sign cache.
    pub fn grade_with(&self, grader: &mut Grader) -> Result<GradedDecomposition<C>> {
        grade_with(self, grader)
    }
}

/// The terms of `f` whose index has sign vector `v`.
pub fn restrict<C: Coefficient>(
    f: &AlgebraElement<C>,
    v: &SignVector,
) -> Result<AlgebraElement<C>> {
    restrict_with(f, v, &mut Grader::new())
}

fn restrict_with<C: Coefficient>(
    f: &AlgebraElement<C>,
    v: &SignVector,
    grader: &mut Grader,
) -> Result<AlgebraElement<C>> {
    let mut keep = Vec::new();
    for (alpha, c) in f.terms() {
        if !alpha.is_zero() && &grader.sign(alpha)? == v {
            keep.push((alpha.clone(), c.clone()));
        }
    }
    AlgebraElement::from_terms(f.field(), keep)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ComponentMismatch {
    pub sign: SignVector,
    pub lhs: String,
    pub rhs: String,
}

/// The constant term of `F (x) G` under the d0 rule, and under the
/// alternative `F(1)G(1) - F_0 G_0`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConstantTermReport {
    pub actual: String,
    pub rule: String,
    pub alternative: String,
    pub rule_holds: bool,
    pub alternative_agrees: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GradedLawReport {
    pub components_checked: usize,
    pub mismatches: Vec<ComponentMismatch>,
    pub constant: ConstantTermReport,
    pub pass: bool,
}

fn coeff_string(c: &GaussianRational) -> String {
    if c.im == num_traits::Zero::zero() {
        format_rational(&c.re)
    } else {
        format!("{} + {}i", format_rational(&c.re), format_rational(&c.im))
    }
}

/// Check `(F (x) G)_v = sum_{v in v1 v2} (F_v1 (x) G_v2)|_v` for every sign
/// vector `v`, and the d0 rule for the constant term.
pub fn check_graded_dirichlet_law(
    f: &AlgebraElement<GaussianRational>,
    g: &AlgebraElement<GaussianRational>,
) -> Result<GradedLawReport> {
    let mut grader = Grader::new();
    let prod = f.dirichlet_product(g)?;
    let lhs = grade_with(&prod, &mut grader)?;
    let fd = grade_with(f, &mut grader)?;
    let gd = grade_with(g, &mut grader)?;

    let field = f.field();
    let mut rhs: BTreeMap<SignVector, AlgebraElement<GaussianRational>> = BTreeMap::new();
    for (v1, f1) in fd.components() {
        for (v2, g2) in gd.components() {
            let part = f1.dirichlet_product(g2)?;
            for v in v1.product_set(v2) {
                let r = restrict_with(&part, &v, &mut grader)?;
                if r.is_zero() {
                    continue;
                }
                let slot = rhs.entry(v).or_insert_with(|| AlgebraElement::zero(field));
                *slot = slot.checked_add(&r)?;
            }
        }
    }
    let mut keys: Vec<&SignVector> = lhs.components().keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut mismatches = Vec::new();
    for v in &keys {
        let l = lhs.component(v);
        let r = rhs
            .get(*v)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(field));
        if l != r {
            mismatches.push(ComponentMismatch {
                sign: (*v).clone(),
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    }

    let a0 = f.constant_term();
    let b0 = g.constant_term();
    let sa = f.trace() - a0.clone();
    let sb = g.trace() - b0.clone();
    let rule = a0.clone() * sb + b0.clone() * sa + a0.clone() * b0.clone();
    let alternative = f.trace() * g.trace() - a0 * b0;
    let actual = prod.constant_term();
    let constant = ConstantTermReport {
        actual: coeff_string(&actual),
        rule: coeff_string(&rule),
        alternative: coeff_string(&alternative),
        rule_holds: actual == rule,
        alternative_agrees: actual == alternative,
    };
    Ok(GradedLawReport {
        components_checked: keys.len(),
        pass: mismatches.is_empty() && constant.rule_holds,
        mismatches,
        constant,
    })
}

/// A triple over `Q` with `(f + g) (x) h != (f (x) h) + (g (x) h)` where `+`
/// is the Cauchy product: `f = g = z^1`, `h = z^1 + z^2`.
pub fn non_distributivity_witness() -> [AlgebraElement<GaussianRational>; 3] {
    let k = NumberField::rationals();
    let one = GaussianRational::new(crate::rational::int(1), crate::rational::int(0));
    let f = AlgebraElement::from_integer_terms(&k, &[(1, one.clone())]);
    let h = AlgebraElement::from_integer_terms(&k, &[(1, one.clone()), (2, one)]);
    [f.clone(), f, h]
}

/// Single-component `f, g` over `Q` whose Cauchy product has two components:
/// `f = z^1 + z^2` (positive), `g = z^(-3/2)` (negative), giving
/// `z^(-1/2) + z^(1/2)`.
pub fn cauchy_non_closure_witness() -> [AlgebraElement<GaussianRational>; 2] {
    let k = NumberField::rationals();
    let one = GaussianRational::new(crate::rational::int(1), crate::rational::int(0));
    let f = AlgebraElement::from_integer_terms(&k, &[(1, one.clone()), (2, one.clone())]);
    let idx = FieldElement::from_rational(&k, crate::rational::rat(-3, 2));
    let g = AlgebraElement::monomial(&idx, one);
    [f, g]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::signs::{ComplexSign, RealSign};
    use num_complex::Complex;

    fn g(n: i64) -> GaussianRational {
        Complex::new(int(n), int(0))
    }

    #[test]
    fn grade_quadratic() {
        let k = NumberField::quadratic(2).unwrap();
        let s2 = k.generator();
        let f = AlgebraElement::from_terms(
            &k,
            [
                (FieldElement::zero(&k), g(1)),
                (FieldElement::from_i64(&k, 3), g(1)),
                (s2.clone(), g(1)),
            ],
        )
        .unwrap();
        let d = grade(&f).unwrap();
        assert_eq!(d.constant(), &g(1));
        let pp = SignVector::new(vec![RealSign::Plus, RealSign::Plus], vec![]);
        assert_eq!(
            d.component(&pp),
            AlgebraElement::monomial(&FieldElement::from_i64(&k, 3), g(1))
        );
        let mp = SignVector::new(vec![RealSign::Minus, RealSign::Plus], vec![]);
        assert_eq!(d.component(&mp), AlgebraElement::monomial(&s2, g(1)));
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn restrict_over_q() {
        let k = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(&k, &[(1, g(1)), (-1, g(1))]);
        let plus = SignVector::new(vec![RealSign::Plus], vec![]);
        assert_eq!(
            restrict(&f, &plus).unwrap(),
            AlgebraElement::from_integer_terms(&k, &[(1, g(1))])
        );
        let gi = NumberField::quadratic(-1).unwrap();
        let h = AlgebraElement::<GaussianRational>::dirichlet_identity(&gi);
        let v = SignVector::new(vec![], vec![ComplexSign::MINUS_E]);
        assert!(restrict(&h, &v).unwrap().is_zero());
    }

    #[test]
    fn constant_term_fixture() {
        let k = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(&k, &[(0, g(2)), (3, g(1))]);
        let h = AlgebraElement::from_integer_terms(&k, &[(0, g(1)), (2, g(5))]);
        let r = check_graded_dirichlet_law(&f, &h).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.constant.actual, "13/1");
        assert_eq!(r.constant.rule, "13/1");
        assert_eq!(r.constant.alternative, "16/1");
        assert!(!r.constant.alternative_agrees);
    }

    #[test]
    fn gaussian_quadrant_law() {
        let k = NumberField::quadratic(-1).unwrap();
        let e = |a: i64, b: i64| FieldElement::from_i64_coords(&k, &[a, b]).unwrap();
        let f =
            AlgebraElement::from_terms(&k, [(e(1, 1), g(2)), (e(2, 1), g(-1)), (e(-1, 3), g(1))])
                .unwrap();
        let h =
            AlgebraElement::from_terms(&k, [(e(1, 2), g(1)), (e(3, -1), g(4)), (e(0, 0), g(1))])
                .unwrap();
        let r = check_graded_dirichlet_law(&f, &h).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn witnesses() {
        let [f, g2, h] = non_distributivity_witness();
        let lhs = f
            .cauchy_product(&g2)
            .unwrap()
            .dirichlet_product(&h)
            .unwrap();
        let rhs = f
            .dirichlet_product(&h)
            .unwrap()
            .cauchy_product(&g2.dirichlet_product(&h).unwrap())
            .unwrap();
        assert_ne!(lhs, rhs);
        let [a, b] = cauchy_non_closure_witness();
        assert_eq!(grade(&a).unwrap().components().len(), 1);
        assert_eq!(grade(&b).unwrap().components().len(), 1);
        assert_eq!(
            grade(&a.cauchy_product(&b).unwrap())
                .unwrap()
                .components()
                .len(),
            2
        );
    }
}
