use thiserror::Error;

/// Errors raised by the number-field and field-algebra layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial is reducible over Q; nontrivial factor {factor}")]
    Reducible { factor: String },
    #[error("degree {0} exceeds the supported maximum of {1}")]
    DegreeTooLarge(usize, usize),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateLength { expected: usize, got: usize },
    #[error("numerically undecided at precision 2^-{0}")]
    UndecidedNumerically(u32),
    #[error("zero has no sign")]
    Signless,
    #[error("element has zero trace and lies in the trace ideal; it cannot be projectivized")]
    NotProjectivizable,
    #[error("monomial composition with index 0 is handled by the Dirichlet constant-term rule")]
    ZeroIndex,
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("family not applicable: {0}")]
    FamilyInapplicable(String),
    #[error("invalid tower embedding: {0}")]
    InvalidTower(String),
    #[error("not in the inverse different: {0}")]
    NotInInverseDifferent(String),
    #[error("quadrature grid {grid} below required bandwidth {required}")]
    Bandwidth { grid: usize, required: usize },
    #[error("invalid hyperbolic point: {0}")]
    InvalidPoint(String),
    #[error("index {0} is not a positive integer within the truncation bound")]
    NonIntegerIndex(String),
    #[error("series truncation bounds differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("series is not invertible at this truncation (a_1 = 0)")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
