//! Real and complex sign gradings.
//!
//! Real places carry a sign in `{+, -}`. A complex pair carries a sign in
//! `U = S u O`: the singular signs `S = {+, sqrt-, -, -sqrt-}` (the four
//! half-axes, a cyclic group of order 4) and the quadrant signs
//! `O = {+e, sqrt-e, -e, -sqrt-e}` (the open quadrants `i^k B`).

mod determine;
mod grading;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use determine::{sign_of, sign_of_with_cap, Grader};
pub(crate) use grading::grade_with;
pub use grading::{
    cauchy_non_closure_witness, check_graded_dirichlet_law, grade, non_distributivity_witness,
    restrict, ComponentMismatch, ConstantTermReport, GradedDecomposition, GradedLawReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealSign {
    Plus,
    Minus,
}

impl RealSign {
    pub fn mul(self, other: RealSign) -> RealSign {
        if self == other {
            RealSign::Plus
        } else {
            RealSign::Minus
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RealSign::Plus => "+",
            RealSign::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignKind {
    /// On an axis.
    Singular,
    /// Inside an open quadrant.
    Quadrant,
}

/// A complex sign `i^k` (singular) or `i^k B` (quadrant), `k` taken mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexSign {
    kind: SignKind,
    quarter: u8,
}

impl ComplexSign {
    pub const PLUS: ComplexSign = ComplexSign::singular(0);
    pub const SQRT_MINUS: ComplexSign = ComplexSign::singular(1);
    pub const MINUS: ComplexSign = ComplexSign::singular(2);
    pub const MINUS_SQRT_MINUS: ComplexSign = ComplexSign::singular(3);
    pub const PLUS_E: ComplexSign = ComplexSign::quadrant(0);
    pub const SQRT_MINUS_E: ComplexSign = ComplexSign::quadrant(1);
    pub const MINUS_E: ComplexSign = ComplexSign::quadrant(2);
    pub const MINUS_SQRT_MINUS_E: ComplexSign = ComplexSign::quadrant(3);

    pub const fn singular(k: u8) -> Self {
        ComplexSign {
            kind: SignKind::Singular,
            quarter: k % 4,
        }
    }

    pub const fn quadrant(k: u8) -> Self {
        ComplexSign {
            kind: SignKind::Quadrant,
            quarter: k % 4,
        }
    }

    /// All eight signs.
    pub fn all() -> [ComplexSign; 8] {
        [0, 1, 2, 3]
            .map(ComplexSign::singular)
            .into_iter()
            .chain([0, 1, 2, 3].map(ComplexSign::quadrant))
            .collect::<Vec<_>>()
            .try_into()
            .expect("eight signs")
    }

    pub fn kind(self) -> SignKind {
        self.kind
    }

    pub fn quarter(self) -> u8 {
        self.quarter
    }

    /// The map `e`: forget the quadrant marker.
    pub fn e(self) -> ComplexSign {
        ComplexSign::singular(self.quarter)
    }

    /// Sign of a nonzero point from the signs of its real and imaginary parts.
    pub fn from_parts(re: std::cmp::Ordering, im: std::cmp::Ordering) -> Option<ComplexSign> {
        use std::cmp::Ordering::*;
        Some(match (re, im) {
            (Equal, Equal) => return None,
            (Greater, Equal) => ComplexSign::singular(0),
            (Equal, Greater) => ComplexSign::singular(1),
            (Less, Equal) => ComplexSign::singular(2),
            (Equal, Less) => ComplexSign::singular(3),
            (Greater, Greater) => ComplexSign::quadrant(0),
            (Less, Greater) => ComplexSign::quadrant(1),
            (Less, Less) => ComplexSign::quadrant(2),
            (Greater, Less) => ComplexSign::quadrant(3),
        })
    }

    /// Sign of `x + iy` for floats (zero components count as on-axis).
    pub fn of_f64(x: f64, y: f64) -> Option<ComplexSign> {
        Self::from_parts(x.partial_cmp(&0.0)?, y.partial_cmp(&0.0)?)
    }

    /// Every sign the product `z1 z2` can take.
    pub fn mul(self, other: ComplexSign) -> BTreeSet<ComplexSign> {
        let q = (self.quarter + other.quarter) % 4;
        match (self.kind, other.kind) {
            (SignKind::Singular, SignKind::Singular) => [ComplexSign::singular(q)].into(),
            (SignKind::Singular, SignKind::Quadrant) | (SignKind::Quadrant, SignKind::Singular) => {
                [ComplexSign::quadrant(q)].into()
            }
            (SignKind::Quadrant, SignKind::Quadrant) => [
                ComplexSign::quadrant(q),
                ComplexSign::singular(q + 1),
                ComplexSign::quadrant(q + 1),
            ]
            .into(),
        }
    }

    /// Sign of the complex conjugate.
    pub fn conj(self) -> ComplexSign {
        match self.kind {
            SignKind::Singular => ComplexSign::singular((4 - self.quarter) % 4),
            SignKind::Quadrant => ComplexSign::quadrant(3 - self.quarter),
        }
    }

    pub fn as_str(self) -> &'static str {
        const S: [&str; 4] = ["+", "sqrt-", "-", "-sqrt-"];
        const Q: [&str; 4] = ["+e", "sqrt-e", "-e", "-sqrt-e"];
        match self.kind {
            SignKind::Singular => S[self.quarter as usize],
            SignKind::Quadrant => Q[self.quarter as usize],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ComplexSign::all()
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown complex sign {s:?}")))
    }
}

impl fmt::Display for ComplexSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for RealSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signs at every place: real places first, then complex pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub real: Vec<RealSign>,
    pub complex: Vec<ComplexSign>,
}

impl SignVector {
    pub fn new(real: Vec<RealSign>, complex: Vec<ComplexSign>) -> Self {
        SignVector { real, complex }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.real.len(), self.complex.len())
    }

    /// Type vector: the kind of each complex component.
    pub fn type_vector(&self) -> Vec<SignKind> {
        self.complex.iter().map(|c| c.kind()).collect()
    }

    pub fn is_singular_homogeneous(&self) -> bool {
        self.complex.iter().all(|c| c.kind() == SignKind::Singular)
    }

    pub fn is_complex_homogeneous(&self) -> bool {
        self.complex.iter().all(|c| c.kind() == SignKind::Quadrant)
    }

    pub fn e(&self) -> SignVector {
        SignVector {
            real: self.real.clone(),
            complex: self.complex.iter().map(|c| c.e()).collect(),
        }
    }

    /// Componentwise set-valued product.
    pub fn product_set(&self, other: &SignVector) -> BTreeSet<SignVector> {
        let real: Vec<RealSign> = self
            .real
            .iter()
            .zip(&other.real)
            .map(|(a, b)| a.mul(*b))
            .collect();
        let mut acc: Vec<Vec<ComplexSign>> = vec![Vec::new()];
        for (a, b) in self.complex.iter().zip(&other.complex) {
            let options = a.mul(*b);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(*o);
                        v
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|complex| SignVector {
                real: real.clone(),
                complex,
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.real
            .iter()
            .map(|s| s.as_str().to_string())
            .chain(self.complex.iter().map(|s| s.as_str().to_string()))
            .collect()
    }

    /// Parse the string form for a field of signature `(r, s)`.
    pub fn from_strings<S: AsRef<str>>(items: &[S], signature: (usize, usize)) -> Result<Self> {
        let (r, s) = signature;
        if items.len() != r + s {
            return Err(Error::Parse(format!(
                "sign vector needs {} entries, got {}",
                r + s,
                items.len()
            )));
        }
        let real = items[..r]
            .iter()
            .map(|x| match x.as_ref() {
                "+" => Ok(RealSign::Plus),
                "-" => Ok(RealSign::Minus),
                other => Err(Error::Parse(format!("unknown real sign {other:?}"))),
            })
            .collect::<Result<_>>()?;
        let complex = items[r..]
            .iter()
            .map(|x| ComplexSign::parse(x.as_ref()))
            .collect::<Result<_>>()?;
        Ok(SignVector { real, complex })
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}
