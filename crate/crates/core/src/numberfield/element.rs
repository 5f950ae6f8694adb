use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::NumberField;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{is_integer, Rational};

/// An element of a number field, as power-basis coordinates.
///
/// Equality, ordering and hashing look only at the coordinates; mixing
/// elements of different fields is a logic error caught by the checked
/// operations.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Lexicographic on coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Binary/unary field operations, for callers that select the operation at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::CoordinateLength {
                expected: field.degree(),
                got: coords.len(),
            });
        }
        Ok(FieldElement {
            field: Arc::clone(field),
            coords,
        })
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        FieldElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_i64(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_i64_coords(field: &Arc<NumberField>, coords: &[i64]) -> Result<Self> {
        Self::new(
            field,
            coords
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Element `q(a)` for a polynomial `q`, reduced modulo the minimal polynomial.
    pub fn from_polynomial(field: &Arc<NumberField>, q: &Polynomial) -> Self {
        let mut acc = vec![Rational::zero(); field.degree()];
        for (k, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, p) in field.power_coords(k).iter().enumerate() {
                acc[j] += c * p;
            }
        }
        FieldElement {
            field: Arc::clone(field),
            coords: acc,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.field.degree() == 1 {
            return Some(self.coords[0].clone());
        }
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    /// Coordinates all integral, i.e. membership in the order `Z[a]`.
    pub fn is_in_power_order(&self) -> bool {
        self.coords.iter().all(is_integer)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coords.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(Self::from_rational(&self.field, self.coords[0].recip()));
        }
        let (g, s, _) = self.to_polynomial().ext_gcd(self.field.minpoly());
        debug_assert_eq!(g, Polynomial::one());
        Ok(Self::from_polynomial(&self.field, &s))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Absolute trace: the trace of multiplication by `self` on the power basis.
    pub fn trace(&self) -> Rational {
        self.field.trace_coords(&self.coords)
    }

    /// Matrix of `x -> self * x` in the power basis; column `j` is `self * a^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.field.degree();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                self.field
                    .mul_coords(&self.coords, &self.field.power_coords(j))
            })
            .collect();
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Sum of the diagonal of the multiplication matrix. Agrees with `trace`.
    pub fn trace_by_matrix(&self) -> Rational {
        let m = self.multiplication_matrix();
        (0..m.len()).fold(Rational::zero(), |acc, i| acc + &m[i][i])
    }

    pub fn norm(&self) -> Rational {
        let cp = self.characteristic_polynomial();
        let c0 = cp.coeff(0);
        if self.field.degree() % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Characteristic polynomial of the multiplication matrix (Faddeev-LeVerrier).
    pub fn characteristic_polynomial(&self) -> Polynomial {
        let a = self.multiplication_matrix();
        let n = a.len();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = mat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = mat_mul(&a, &m);
            let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
            coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        Polynomial::new(coeffs)
    }

    /// Monic minimal polynomial over Q: the square-free part of the
    /// characteristic polynomial, which is a power of it.
    pub fn minimal_polynomial(&self) -> Polynomial {
        self.characteristic_polynomial().square_free_part()
    }

    /// `Tr(self * a^j)` for `j = 0..d-1`.
    pub fn trace_pairings(&self) -> Vec<Rational> {
        (0..self.field.degree())
            .map(|j| {
                self.field.trace_coords(
                    &self
                        .field
                        .mul_coords(&self.coords, &self.field.power_coords(j)),
                )
            })
            .collect()
    }

    /// Membership in the inverse different of `Z[a]`: every `Tr(self * a^j)` integral.
    pub fn is_in_inverse_different(&self) -> bool {
        self.trace_pairings().iter().all(is_integer)
    }

    /// Monogenic route to the same question: `p'(a) * self` in `Z[a]`.
    pub fn is_in_inverse_different_monogenic(&self) -> bool {
        let dp = Self::from_polynomial(&self.field, &self.field.minpoly().derivative());
        (&dp * self).is_in_power_order()
    }

    /// Dual-basis coordinates (all integers when in the inverse different).
    pub fn dual_coords(&self) -> Option<Vec<BigInt>> {
        self.trace_pairings()
            .into_iter()
            .map(|t| is_integer(&t).then(|| t.to_integer()))
            .collect()
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Rational::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + &a[i][k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Runtime-dispatched exact arithmetic.
pub fn elem_arith(op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
    let need = || b.ok_or_else(|| Error::Parse("binary operation needs two operands".into()));
    match op {
        ArithOp::Add => a.checked_add(need()?),
        ArithOp::Sub => a.checked_sub(need()?),
        ArithOp::Mul => a.checked_mul(need()?),
        ArithOp::Inv => a.inv(),
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.same_field(rhs), "field mismatch");
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.same_field(rhs), "field mismatch");
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.same_field(rhs), "field mismatch");
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.field.mul_coords(&self.coords, &rhs.coords),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for FieldElement {
    /// Expression form using the generator symbol `a`, e.g. `-1 + 1/2*a^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "a")?,
                _ => write!(f, "a^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sqrt2() -> Arc<NumberField> {
        NumberField::quadratic(2).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let k = sqrt2();
        let a = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        let b = FieldElement::from_i64_coords(&k, &[1, -1]).unwrap();
        assert_eq!(&a * &b, FieldElement::from_i64(&k, -1));
        let gi = NumberField::quadratic(-1).unwrap();
        let i = gi.generator();
        assert_eq!(&i * &i, FieldElement::from_i64(&gi, -1));
    }

    #[test]
    fn inverse_matches_extended_euclid_oracle() {
        // Oracle: (1 + s)(-1 + s) = s^2 - 1 = 1 in Q(sqrt2), so the inverse is -1 + s.
        let k = sqrt2();
        let a = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(inv, FieldElement::from_i64_coords(&k, &[-1, 1]).unwrap());
        assert!((&a * &inv).is_one());
        assert_eq!(FieldElement::zero(&k).inv(), Err(Error::DivisionByZero));
        let via = elem_arith(ArithOp::Inv, &a, None).unwrap();
        assert_eq!(via, inv);
    }

    #[test]
    fn traces() {
        let k = sqrt2();
        let e = FieldElement::from_i64_coords(&k, &[3, 5]).unwrap();
        assert_eq!(e.trace(), int(6));
        assert_eq!(e.trace_by_matrix(), int(6));
        let z5 = NumberField::new(Polynomial::cyclotomic(5)).unwrap();
        let z = z5.generator();
        // Oracle: trace of the companion matrix of x^4+x^3+x^2+x+1 is -1.
        assert_eq!(z.trace_by_matrix(), int(-1));
        assert_eq!(z.trace(), int(-1));
        let z8 = NumberField::new(Polynomial::cyclotomic(8)).unwrap();
        let g = z8.generator();
        for j in 1..4 {
            assert_eq!(g.pow(j).unwrap().trace(), int(0));
        }
        assert_eq!(FieldElement::one(&z8).trace(), int(4));
    }

    #[test]
    fn minimal_polynomials() {
        let k = sqrt2();
        assert_eq!(
            k.generator().minimal_polynomial(),
            Polynomial::from_i64(&[-2, 0, 1])
        );
        assert_eq!(
            FieldElement::from_i64(&k, 3).minimal_polynomial(),
            Polynomial::from_i64(&[-3, 1])
        );
        let z5 = NumberField::new(Polynomial::cyclotomic(5)).unwrap();
        let z = z5.generator();
        let s = &z + &z.inv().unwrap();
        // Oracle: characteristic polynomial of z + z^-1 is (x^2 + x - 1)^2.
        assert_eq!(
            s.characteristic_polynomial(),
            Polynomial::from_i64(&[-1, 1, 1]).pow(2)
        );
        assert_eq!(s.minimal_polynomial(), Polynomial::from_i64(&[-1, 1, 1]));
    }

    #[test]
    fn inverse_different_membership() {
        let k = sqrt2();
        let quarter = FieldElement::new(&k, vec![int(0), rat(1, 4)]).unwrap();
        let eighth = FieldElement::new(&k, vec![int(0), rat(1, 8)]).unwrap();
        assert!(quarter.is_in_inverse_different());
        assert!(quarter.is_in_inverse_different_monogenic());
        // Tr(s/8 * s) = 1/2
        assert_eq!(eighth.trace_pairings()[1], rat(1, 2));
        assert!(!eighth.is_in_inverse_different());
        assert!(!eighth.is_in_inverse_different_monogenic());
        assert!(FieldElement::one(&k).is_in_inverse_different());
    }

    #[test]
    fn display_form() {
        let k = sqrt2();
        let e = FieldElement::new(&k, vec![int(-1), rat(1, 2)]).unwrap();
        assert_eq!(e.to_string(), "-1 + 1/2*a");
        assert_eq!(FieldElement::zero(&k).to_string(), "0");
        assert_eq!(k.generator().to_string(), "a");
    }

    #[test]
    fn norm_of_unit() {
        let k = sqrt2();
        let u = FieldElement::from_i64_coords(&k, &[1, 1]).unwrap();
        assert_eq!(u.norm(), int(-1));
    }
}
