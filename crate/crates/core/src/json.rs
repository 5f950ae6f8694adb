//! JSON encodings of fields, elements and algebra elements. Rationals are
//! always the strings `"p/q"`, so every value round-trips bit-exactly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::rational::{format_rational, parse_rational};
use crate::scalar::{Coefficient, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub minpoly: Vec<String>,
    pub signature: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub field: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub index: Vec<String>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: String,
    pub mode: Mode,
    pub terms: Vec<TermJson>,
}

/// Identifier of a field in element and algebra documents: its minimal
/// polynomial's coefficients, ascending, comma-joined.
pub fn field_id(field: &NumberField) -> String {
    field.minpoly().coeff_strings().join(",")
}

fn check_id(field: &NumberField, id: &str) -> Result<()> {
    if field_id(field) != id {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn parse_all(items: &[String]) -> Result<Vec<crate::rational::Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

impl FieldJson {
    pub fn from_field(field: &NumberField) -> Self {
        let (r, s) = field.signature();
        FieldJson {
            minpoly: field.minpoly().coeff_strings(),
            signature: [r, s],
        }
    }

    /// Rebuild the field; the recorded signature must match the computed one.
    pub fn to_field(&self) -> Result<Arc<NumberField>> {
        let p = Polynomial::parse_coeffs(&self.minpoly)?;
        let field = if let Some(n) = cyclotomic_index(&p) {
            NumberField::cyclotomic(n)?
        } else {
            NumberField::new(p)?
        };
        let (r, s) = field.signature();
        if [r, s] != self.signature {
            return Err(Error::Parse(format!(
                "recorded signature {:?} but the polynomial has ({r}, {s})",
                self.signature
            )));
        }
        Ok(field)
    }
}

/// `n` with `p = Phi_n`, for `p` of degree above 2 (cyclotomic fields skip
/// the irreducibility search).
pub fn cyclotomic_index(p: &Polynomial) -> Option<u64> {
    let d = p.degree()? as u64;
    if d <= 2 {
        return None;
    }
    // phi(n) >= sqrt(n / 2), so n <= 2 d^2
    (3..=2 * d * d).find(|&n| Polynomial::cyclotomic(n) == *p)
}

impl ElementJson {
    pub fn from_element(x: &FieldElement) -> Self {
        ElementJson {
            field: field_id(x.field()),
            coords: x.coords().iter().map(format_rational).collect(),
        }
    }

    pub fn to_element(&self, field: &Arc<NumberField>) -> Result<FieldElement> {
        check_id(field, &self.field)?;
        FieldElement::new(field, parse_all(&self.coords)?)
    }
}

impl AlgebraJson {
    /// Terms are sorted lexicographically by index coordinates.
    pub fn from_algebra<C: Coefficient>(f: &AlgebraElement<C>) -> Self {
        let mut terms: Vec<TermJson> = f
            .terms()
            .map(|(alpha, c)| {
                let (re, im) = c.to_parts();
                TermJson {
                    index: alpha.coords().iter().map(format_rational).collect(),
                    re: format_rational(&re),
                    im: format_rational(&im),
                }
            })
            .collect();
        let key = |t: &TermJson| parse_all(&t.index).expect("formatted rationals");
        terms.sort_by_cached_key(key);
        AlgebraJson {
            field: field_id(f.field()),
            mode: C::MODE,
            terms,
        }
    }

    pub fn to_algebra<C: Coefficient>(
        &self,
        field: &Arc<NumberField>,
    ) -> Result<AlgebraElement<C>> {
        check_id(field, &self.field)?;
        if self.mode != C::MODE {
            return Err(Error::Parse(format!(
                "document is in {:?} mode, requested {:?}",
                self.mode,
                C::MODE
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let alpha = FieldElement::new(field, parse_all(&t.index)?)?;
                let c = C::from_parts(&parse_rational(&t.re)?, &parse_rational(&t.im)?);
                Ok((alpha, c))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraElement::from_terms(field, terms)
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn field_to_json(field: &NumberField) -> String {
    to_json(&FieldJson::from_field(field))
}

pub fn field_from_json(s: &str) -> Result<Arc<NumberField>> {
    from_json::<FieldJson>(s)?.to_field()
}

pub fn element_to_json(x: &FieldElement) -> String {
    to_json(&ElementJson::from_element(x))
}

pub fn element_from_json(s: &str, field: &Arc<NumberField>) -> Result<FieldElement> {
    from_json::<ElementJson>(s)?.to_element(field)
}

pub fn algebra_to_json<C: Coefficient>(f: &AlgebraElement<C>) -> String {
    to_json(&AlgebraJson::from_algebra(f))
}

pub fn algebra_from_json<C: Coefficient>(
    s: &str,
    field: &Arc<NumberField>,
) -> Result<AlgebraElement<C>> {
    from_json::<AlgebraJson>(s)?.to_algebra(field)
}
