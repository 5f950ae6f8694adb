//! Verified field automorphisms, Galois groups from known families, their
//! action on the field algebra, and the flows `Phi_r`, `Psi_r`.

mod flows;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

pub use flows::{flow_phi, flow_psi, verify_flows, FlowParameter};
pub use verify::{
    cyclotomic_trace_collapse, fixed_field_check, relative_trace, sign_permutation,
    verify_nonlinear_automorphism, CollapseReport, CollapseRow, NonlinearReport, TowerEmbedding,
};

/// Field automorphism determined by the image of the generator.
#[derive(Clone)]
pub struct Automorphism {
    field: Arc<NumberField>,
    /// `powers[k]` is the image of `a^k`.
    powers: Vec<FieldElement>,
    inverse_image: FieldElement,
    order: usize,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {}", self.image())
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image() == other.image()
    }
}

impl Eq for Automorphism {}

fn image_powers(image: &FieldElement) -> Vec<FieldElement> {
    let d = image.field().degree();
    let mut powers = Vec::with_capacity(d);
    let mut p = FieldElement::one(image.field());
    for _ in 0..d {
        powers.push(p.clone());
        p = &p * image;
    }
    powers
}

fn apply_powers(powers: &[FieldElement], x: &FieldElement) -> FieldElement {
    let field = x.field();
    let mut acc = FieldElement::zero(field);
    for (c, p) in x.coords().iter().zip(powers) {
        if !num_traits::Zero::is_zero(c) {
            acc = &acc + &p.scale(c);
        }
    }
    acc
}

impl Automorphism {
    /// The automorphism sending the generator to `image`, if `image` is a root
    /// of the defining polynomial.
    pub fn new(image: &FieldElement) -> Result<Self> {
        let field = image.field();
        if image.minimal_polynomial() != *field.minpoly() {
            return Err(Error::NotAnAutomorphism(format!(
                "{} has minimal polynomial {}, field is defined by {}",
                image,
                image.minimal_polynomial(),
                field.minpoly()
            )));
        }
        Self::from_root(image)
    }

    /// `image` must already be known to be a root of the defining polynomial.
    fn from_root(image: &FieldElement) -> Result<Self> {
        let field = image.field().clone();
        let powers = image_powers(image);
        let gen = field.generator();
        // iterate x -> sigma(x) starting at sigma(a) until it returns to a
        let mut prev = gen.clone();
        let mut cur = image.clone();
        let mut order = 1;
        while cur != gen {
            if order > field.degree() {
                return Err(Error::NotAnAutomorphism(format!(
                    "{image}: no return to the generator within {} steps",
                    field.degree()
                )));
            }
            prev = cur.clone();
            cur = apply_powers(&powers, &cur);
            order += 1;
        }
        Ok(Automorphism {
            field,
            powers,
            inverse_image: prev,
            order,
        })
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        Automorphism::new(&field.generator()).expect("generator is a root")
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn image(&self) -> &FieldElement {
        if self.powers.len() > 1 {
            &self.powers[1]
        } else {
            &self.inverse_image
        }
    }

    pub fn inverse_image(&self) -> &FieldElement {
        &self.inverse_image
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !x.same_field(self.powers.first().expect("degree >= 1")) {
            return Err(Error::FieldMismatch);
        }
        Ok(apply_powers(&self.powers, x))
    }

    /// `self o other`: first `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Automorphism::from_root(&self.apply(other.image())?)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism::from_root(&self.inverse_image).expect("inverse of an automorphism")
    }

    /// Reindex `sum a_alpha z^alpha` to `sum a_alpha z^sigma(alpha)`.
    pub fn apply_to_algebra<C: Coefficient>(
        &self,
        f: &AlgebraElement<C>,
    ) -> Result<AlgebraElement<C>> {
        if **f.field() != *self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(f.map_indices(|alpha| apply_powers(&self.powers, alpha)))
    }
}

/// Free-function form of [`Automorphism::new`].
pub fn make_automorphism(image: &FieldElement) -> Result<Automorphism> {
    Automorphism::new(image)
}

/// Free-function form of [`Automorphism::apply_to_algebra`].
pub fn apply_to_algebra<C: Coefficient>(
    sigma: &Automorphism,
    f: &AlgebraElement<C>,
) -> Result<AlgebraElement<C>> {
    sigma.apply_to_algebra(f)
}

#[derive(Clone, Debug)]
pub enum GroupFamily {
    Quadratic,
    /// `a -> a^k` for units `k` mod `n`.
    Cyclotomic(u64),
    /// Generators given by images of `a`; the group is their closure.
    Explicit(Vec<FieldElement>),
}

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: Arc<NumberField>,
    elements: Vec<Automorphism>,
    /// `table[i][j]` is the index of `elements[i] o elements[j]`.
    table: Vec<Vec<usize>>,
}

impl GaloisGroup {
    /// Closure of `generators` under composition; the identity comes first.
    pub fn generated_by(field: &Arc<NumberField>, generators: &[Automorphism]) -> Result<Self> {
        let mut elements = vec![Automorphism::identity(field)];
        let mut index: HashMap<FieldElement, usize> = HashMap::new();
        index.insert(elements[0].image().clone(), 0);
        let mut queue = 0;
        while queue < elements.len() {
            let x = elements[queue].image().clone();
            queue += 1;
            for g in generators {
                let y = g.apply(&x)?;
                if !index.contains_key(&y) {
                    if elements.len() >= field.degree() {
                        return Err(Error::NotAnAutomorphism(
                            "closure exceeds the field degree".into(),
                        ));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(Automorphism::from_root(&y)?);
                }
            }
        }
        let mut table = Vec::with_capacity(elements.len());
        for x in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for y in &elements {
                let xy = x.apply(y.image())?;
                let k = index.get(&xy).copied().ok_or_else(|| {
                    Error::NotAnAutomorphism("composition table not closed".into())
                })?;
                row.push(k);
            }
            table.push(row);
        }
        let group = GaloisGroup {
            field: field.clone(),
            elements,
            table,
        };
        group.verify_table()?;
        Ok(group)
    }

    pub fn from_family(field: &Arc<NumberField>, family: &GroupFamily) -> Result<Self> {
        let gens = match family {
            GroupFamily::Quadratic => {
                if field.degree() != 2 {
                    return Err(Error::FamilyInapplicable(format!(
                        "quadratic family on a degree {} field",
                        field.degree()
                    )));
                }
                // other root of x^2 + c1 x + c0 is -a - c1
                let c1 = field.minpoly().coeff(1);
                let img = &(-&field.generator()) - &FieldElement::from_rational(field, c1);
                vec![Automorphism::new(&img)?]
            }
            GroupFamily::Cyclotomic(n) => {
                if *field.minpoly() != Polynomial::cyclotomic(*n) {
                    return Err(Error::FamilyInapplicable(format!(
                        "field is not defined by the {n}-th cyclotomic polynomial"
                    )));
                }
                let a = field.generator();
                let mut gens = Vec::new();
                for k in 2..*n {
                    if k.gcd(n) == 1 {
                        // a primitive n-th root of unity is a root of Phi_n
                        gens.push(Automorphism::from_root(&a.pow(k as i64)?)?);
                    }
                }
                gens
            }
            GroupFamily::Explicit(images) => images
                .iter()
                .map(|img| {
                    if !img.same_field(&field.generator()) {
                        return Err(Error::FieldMismatch);
                    }
                    Automorphism::new(img)
                })
                .collect::<Result<_>>()?,
        };
        GaloisGroup::generated_by(field, &gens)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().fold(1, |acc, s| acc.lcm(&s.order()))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Identity, inverses, associativity and Lagrange against the degree.
    pub fn verify_table(&self) -> Result<()> {
        let n = self.order();
        let bad = |what: &str| Err(Error::NotAnAutomorphism(format!("group table: {what}")));
        if !self.elements[0].is_identity() {
            return bad("first element is not the identity");
        }
        for i in 0..n {
            if self.table[0][i] != i || self.table[i][0] != i {
                return bad("identity law");
            }
            if !(0..n).any(|j| self.table[i][j] == 0 && self.table[j][i] == 0) {
                return bad("missing inverse");
            }
            for j in 0..n {
                for k in 0..n {
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]] {
                        return bad("associativity");
                    }
                }
            }
        }
        if self.field.degree() % n != 0 {
            return bad("order does not divide the degree");
        }
        Ok(())
    }
}

/// Free-function form of [`GaloisGroup::from_family`].
pub fn group_from_family(field: &Arc<NumberField>, family: &GroupFamily) -> Result<GaloisGroup> {
    GaloisGroup::from_family(field, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::scalar::GaussianRational;
    use num_complex::Complex;

    #[test]
    fn sqrt2_conjugation() {
        let k = NumberField::quadratic(2).unwrap();
        let s = Automorphism::new(&-&k.generator()).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.inverse(), s);
        let f = AlgebraElement::monomial(&k.generator(), GaussianRational::new(int(1), int(0)));
        let g = s.apply_to_algebra(&f).unwrap();
        assert_eq!(g.support().next().unwrap(), &-&k.generator());
    }

    #[test]
    fn zeta5_square_has_order_four() {
        let k = NumberField::cyclotomic(5).unwrap();
        let a = k.generator();
        let s = Automorphism::new(&a.pow(2).unwrap()).unwrap();
        assert_eq!(s.order(), 4);
        let mut t = s.clone();
        for _ in 0..3 {
            t = s.compose(&t).unwrap();
        }
        assert!(t.is_identity());
        assert_eq!(s.compose(&s.inverse()).unwrap(), Automorphism::identity(&k));
    }

    #[test]
    fn cube_root_negation_rejected() {
        let k = NumberField::new(Polynomial::from_i64(&[-2, 0, 0, 1])).unwrap();
        assert!(matches!(
            Automorphism::new(&-&k.generator()),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn family_groups() {
        let qi = NumberField::quadratic(-1).unwrap();
        assert_eq!(
            GaloisGroup::from_family(&qi, &GroupFamily::Quadratic)
                .unwrap()
                .order(),
            2
        );
        let z5 = NumberField::cyclotomic(5).unwrap();
        let g5 = GaloisGroup::from_family(&z5, &GroupFamily::Cyclotomic(5)).unwrap();
        assert_eq!((g5.order(), g5.exponent()), (4, 4));
        let z8 = NumberField::cyclotomic(8).unwrap();
        let g8 = GaloisGroup::from_family(&z8, &GroupFamily::Cyclotomic(8)).unwrap();
        assert_eq!((g8.order(), g8.exponent()), (4, 2));
        assert!(g8.is_abelian());
        assert!(matches!(
            GaloisGroup::from_family(&z8, &GroupFamily::Cyclotomic(5)),
            Err(Error::FamilyInapplicable(_))
        ));
        assert!(GaloisGroup::from_family(&z8, &GroupFamily::Quadratic).is_err());
    }

    #[test]
    fn action_is_a_group_action() {
        let z8 = NumberField::cyclotomic(8).unwrap();
        let g = GaloisGroup::from_family(&z8, &GroupFamily::Cyclotomic(8)).unwrap();
        let a = z8.generator();
        let one = Complex::new(int(1), int(0));
        let f = AlgebraElement::from_terms(
            &z8,
            [
                (a.clone(), one.clone()),
                (&a * &a, Complex::new(int(2), int(-3))),
            ],
        )
        .unwrap();
        for s in g.elements() {
            for t in g.elements() {
                let st = s.compose(t).unwrap();
                let lhs = st.apply_to_algebra(&f).unwrap();
                let rhs = s
                    .apply_to_algebra(&t.apply_to_algebra(&f).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
