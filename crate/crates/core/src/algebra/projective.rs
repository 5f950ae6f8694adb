use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// A point of the projectivization of `C*[K] = C[K] - I_K`, stored by its
/// trace-normalized representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveClass<C: Coefficient> {
    representative: AlgebraElement<C>,
}

impl<C: Coefficient> ProjectiveClass<C> {
    pub fn new(f: &AlgebraElement<C>) -> Result<Self> {
        let t = f.trace();
        if t.close_to(&C::zero(), C::default_tolerance()) {
            return Err(Error::NotProjectivizable);
        }
        let inv = C::one() / t;
        Ok(ProjectiveClass {
            representative: f.scale(&inv),
        })
    }

    /// The representative with trace 1.
    pub fn representative(&self) -> &AlgebraElement<C> {
        &self.representative
    }

    pub fn into_representative(self) -> AlgebraElement<C> {
        self.representative
    }

    /// `[f] (x) [g] = [f (x) g]`, well defined since `T` is multiplicative.
    pub fn dirichlet_product(&self, other: &Self) -> Result<Self> {
        Self::new(
            &self
                .representative
                .dirichlet_product(&other.representative)?,
        )
    }

    pub fn cauchy_product(&self, other: &Self) -> Result<Self> {
        Self::new(&self.representative.cauchy_product(&other.representative)?)
    }
}
