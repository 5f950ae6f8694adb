//! The field algebra `C[K]`: finitely supported sums `sum a_alpha z^alpha`
//! indexed by field elements, with the Cauchy product (indices add), the
//! Dirichlet product (indices multiply), and the trace functional.

mod projective;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

pub use projective::ProjectiveClass;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::{lcm_of_denominators, Rational};
use crate::scalar::{Coefficient, GaussianRational, Real};

/// A finitely supported element of `C[K]`. Zero coefficients are never stored.
#[derive(Clone)]
pub struct AlgebraElement<C> {
    field: Arc<NumberField>,
    terms: BTreeMap<FieldElement, C>,
}

impl<C: Coefficient> PartialEq for AlgebraElement<C> {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.terms == other.terms
    }
}

impl<C: Coefficient> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| (k.to_string(), v)))
            .finish()
    }
}

fn check_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl<C: Coefficient> AlgebraElement<C> {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        AlgebraElement {
            field: Arc::clone(field),
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * z^alpha`.
    pub fn monomial(alpha: &FieldElement, coeff: C) -> Self {
        let mut out = Self::zero(alpha.field());
        out.add_term(alpha.clone(), coeff);
        out
    }

    /// The additive identity of the Cauchy product, `z^0`.
    pub fn cauchy_identity(field: &Arc<NumberField>) -> Self {
        Self::monomial(&FieldElement::zero(field), C::one())
    }

    /// The identity of the Dirichlet product, `z^1`.
    pub fn dirichlet_identity(field: &Arc<NumberField>) -> Self {
        Self::monomial(&FieldElement::one(field), C::one())
    }

    pub fn from_terms(
        field: &Arc<NumberField>,
        terms: impl IntoIterator<Item = (FieldElement, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(field);
        for (alpha, c) in terms {
            check_field(field, alpha.field())?;
            out.add_term(alpha, c);
        }
        Ok(out)
    }

    /// Terms with rational indices `n`, for quick construction over any field.
    pub fn from_integer_terms(field: &Arc<NumberField>, terms: &[(i64, C)]) -> Self {
        let mut out = Self::zero(field);
        for (n, c) in terms {
            out.add_term(FieldElement::from_i64(field, *n), c.clone());
        }
        out
    }

    fn add_term(&mut self, alpha: FieldElement, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Terms in ascending lexicographic order of index coordinates.
    pub fn terms(&self) -> impl Iterator<Item = (&FieldElement, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &FieldElement> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &FieldElement) -> C {
        self.terms.get(alpha).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `z^0`.
    pub fn constant_term(&self) -> C {
        self.coeff(&FieldElement::zero(&self.field))
    }

    /// Coefficientwise sum (the ordinary vector-space addition).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_field(&self.field, &other.field)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.field);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Cauchy product: `c_alpha = sum_{a1 + a2 = alpha} a_a1 b_a2`.
    pub fn cauchy_product(&self, other: &Self) -> Result<Self> {
        check_field(&self.field, &other.field)?;
        let mut out = Self::zero(&self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// Dirichlet product: `d_alpha = sum_{a1 a2 = alpha, a1, a2 != 0} a_a1 b_a2`
    /// for `alpha != 0`, and
    /// `d_0 = a_0 sum_{beta != 0} b_beta + b_0 sum_{beta != 0} a_beta + a_0 b_0`.
    pub fn dirichlet_product(&self, other: &Self) -> Result<Self> {
        check_field(&self.field, &other.field)?;
        let mut out = Self::zero(&self.field);
        for (a, x) in self.terms.iter().filter(|(a, _)| !a.is_zero()) {
            for (b, y) in other.terms.iter().filter(|(b, _)| !b.is_zero()) {
                out.add_term(a * b, x.clone() * y.clone());
            }
        }
        let a0 = self.constant_term();
        let b0 = other.constant_term();
        let d0 =
            a0.clone() * other.nonconstant_sum() + b0.clone() * self.nonconstant_sum() + a0 * b0;
        out.add_term(FieldElement::zero(&self.field), d0);
        Ok(out)
    }

    fn nonconstant_sum(&self) -> C {
        self.terms
            .iter()
            .filter(|(a, _)| !a.is_zero())
            .fold(C::zero(), |acc, (_, c)| acc + c.clone())
    }

    /// Trace functional `T(f) = sum a_alpha`.
    pub fn trace(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Membership in the ideal `I_K = ker T`, with the mode's default tolerance.
    pub fn is_in_ideal(&self) -> bool {
        self.is_in_ideal_tol(C::default_tolerance())
    }

    /// `|T(f)| <= tol` (exact mode ignores `tol` and tests equality).
    pub fn is_in_ideal_tol(&self, tol: f64) -> bool {
        self.trace().close_to(&C::zero(), tol)
    }

    /// Trace-normalized representative of the projective class.
    pub fn projectivize(&self) -> Result<ProjectiveClass<C>> {
        ProjectiveClass::new(self)
    }

    /// True iff `self = lambda * other` for a nonzero scalar `lambda`,
    /// by cross-multiplication of coefficient pairs.
    pub fn projective_eq(&self, other: &Self) -> bool {
        if *self.field != *other.field {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let tol = C::default_tolerance();
        if self.terms.len() != other.terms.len()
            || self
                .terms
                .keys()
                .zip(other.terms.keys())
                .any(|(a, b)| a != b)
        {
            // In approximate mode, a tiny residue may survive on one side only.
            if tol == 0.0 {
                return false;
            }
        }
        let (p, fp) = self.terms.iter().next().expect("nonempty");
        let gp = other.coeff(p);
        let keys: std::collections::BTreeSet<&FieldElement> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let lhs = self.coeff(k) * gp.clone();
            let rhs = other.coeff(k) * fp.clone();
            lhs.close_to(&rhs, tol)
        }) && !gp.close_to(&C::zero(), tol)
    }

    /// Reindex `a_beta z^beta -> a_beta z^(beta alpha)`, which equals
    /// `self (x) z^alpha` for `alpha != 0`.
    pub fn monomial_compose(&self, alpha: &FieldElement) -> Result<Self> {
        check_field(&self.field, alpha.field())?;
        if alpha.is_zero() {
            return Err(Error::ZeroIndex);
        }
        let mut out = Self::zero(&self.field);
        for (b, c) in &self.terms {
            out.add_term(b * alpha, c.clone());
        }
        Ok(out)
    }

    /// An integer `m` such that `z^m (x) self` is supported on `Z[a]`,
    /// together with that product.
    pub fn clear_denominators(&self) -> (Rational, Self) {
        let m = Rational::from_integer(lcm_of_denominators(
            self.terms.keys().flat_map(|k| k.coords().iter()),
        ));
        let mono = FieldElement::from_rational(&self.field, m.clone());
        let cleared = self
            .monomial_compose(&mono)
            .expect("m is a positive integer");
        (m, cleared)
    }

    /// True iff every index lies in the power-basis order `Z[a]`.
    pub fn has_integral_support(&self) -> bool {
        self.terms.keys().all(FieldElement::is_in_power_order)
    }

    /// Apply `g` to every coefficient, dropping new zeros.
    pub fn map_coefficients<D: Coefficient>(
        &self,
        g: impl Fn(&FieldElement, &C) -> D,
    ) -> AlgebraElement<D> {
        let mut out = AlgebraElement::zero(&self.field);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), g(k, v));
        }
        out
    }

    /// Apply `g` to every index (terms whose images collide are summed).
    pub fn map_indices(&self, g: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for (k, v) in &self.terms {
            out.add_term(g(k), v.clone());
        }
        out
    }

    /// Keep the terms whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&FieldElement) -> bool) -> Self {
        AlgebraElement {
            field: Arc::clone(&self.field),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Exact conversion of every coefficient to a Gaussian rational
    /// (floats are dyadic, so this loses nothing).
    pub fn to_exact(&self) -> AlgebraElement<GaussianRational> {
        self.map_coefficients(|_, c| {
            let (re, im) = c.to_parts();
            Complex::new(re, im)
        })
    }

    /// Nearest floating-point coefficients.
    pub fn to_approx<F: Real>(&self) -> AlgebraElement<Complex<F>>
    where
        Complex<F>: Coefficient,
    {
        self.map_coefficients(|_, c| {
            let (re, im) = c.to_parts();
            <Complex<F> as Coefficient>::from_parts(&re, &im)
        })
    }
}

impl<C: Coefficient> fmt::Display for AlgebraElement<C> {
    /// `c*z^(alpha) + ...` with coefficients as `re+imi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let (re, im) = v.to_parts();
            let coeff = if im.is_zero() {
                crate::rational::format_rational(&re)
            } else if re.is_zero() {
                format!("{}i", crate::rational::format_rational(&im))
            } else {
                format!(
                    "({} + {}i)",
                    crate::rational::format_rational(&re),
                    crate::rational::format_rational(&im)
                )
            };
            if re.is_one() && im.is_zero() {
                write!(f, "z^{{{k}}}")?;
            } else {
                write!(f, "{coeff}*z^{{{k}}}")?;
            }
        }
        Ok(())
    }
}
