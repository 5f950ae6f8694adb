//! Exact number-field arithmetic with certified embeddings, the field algebra
//! `C[K]` carrying the Cauchy and Dirichlet products, sign gradings, Hardy-space
//! evaluation, Galois actions and flows, and integer Dirichlet series.

pub mod algebra;
pub mod dirichlet;
pub mod error;
pub mod galois;
pub mod hardy;
pub mod interval;
pub mod json;
pub mod numberfield;
pub mod poly;
pub mod rational;
pub mod report;
pub mod roots;
pub mod sample;
pub mod scalar;
pub mod signs;

pub use algebra::{AlgebraElement, ProjectiveClass};
pub use dirichlet::{IntegerSeries, Sieve};
pub use error::{Error, Result};
pub use galois::{Automorphism, FlowParameter, GaloisGroup, GroupFamily, TowerEmbedding};
pub use hardy::{EvalResult, HyperPoint, TorusPoint};
pub use numberfield::{
    elem_arith, trace_on_infinity, ArithOp, FieldElement, KInfinity, NumberField, Place, PlaceKind,
};
pub use poly::Polynomial;
pub use rational::Rational;
pub use report::{CheckReport, Failure};
pub use scalar::{Coefficient, GaussianRational, Mode, Real};
pub use signs::{ComplexSign, GradedDecomposition, RealSign, SignKind, SignVector};

/// Field-algebra element with exact Gaussian-rational coefficients.
pub type ExactAlgebraElement = AlgebraElement<GaussianRational>;
/// Field-algebra element with double-precision complex coefficients.
pub type AlgebraElement64 = AlgebraElement<num_complex::Complex<f64>>;
/// Field-algebra element with single-precision complex coefficients.
pub type AlgebraElement32 = AlgebraElement<num_complex::Complex<f32>>;
