//! Number fields `Q[x]/(p)` with exact arithmetic and certified embeddings.

mod element;
mod embedding;
mod irreducible;

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use element::{elem_arith, ArithOp, FieldElement};
pub use embedding::{trace_on_infinity, KInfinity, DEFAULT_CAP_BITS, DEFAULT_START_BITS};

use crate::error::{Error, Result};
use crate::interval::CertifiedBox;
use crate::poly::Polynomial;
use crate::rational::{int, Rational};
use crate::roots::{RootRef, RootSystem};

/// Largest degree accepted by the generic irreducibility check.
pub const MAX_GENERIC_DEGREE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceKind {
    Real,
    ComplexPair,
}

/// An archimedean place: a real embedding, or a conjugate pair represented by
/// the embedding that sends the generator to the root with positive imaginary part.
#[derive(Clone, Debug)]
pub struct Place {
    pub kind: PlaceKind,
    /// Position among places of the same kind.
    pub index: usize,
    /// Certified box around the generator's image at construction time.
    pub root_box: CertifiedBox,
}

impl Place {
    pub(crate) fn root_ref(&self) -> RootRef {
        match self.kind {
            PlaceKind::Real => RootRef::Real(self.index),
            PlaceKind::ComplexPair => RootRef::Upper(self.index),
        }
    }

    /// Box for the conjugate embedding of a complex pair.
    pub fn partner_box(&self) -> Option<CertifiedBox> {
        (self.kind == PlaceKind::ComplexPair).then(|| self.root_box.conj())
    }
}

/// A number field of degree `d` given by a monic irreducible minimal polynomial.
///
/// Elements are coordinate vectors in the power basis `1, a, ..., a^(d-1)`.
/// Places are ordered real-first (ascending), then complex pairs by the real
/// part and then the imaginary part of the generator's representative image.
pub struct NumberField {
    minpoly: Polynomial,
    degree: usize,
    signature: (usize, usize),
    /// Power-basis coordinates of `a^(d+k)` for `k = 0..d-1`.
    reduction: Vec<Vec<Rational>>,
    /// `Tr(a^k)` for `k = 0..d-1`.
    power_traces: Vec<Rational>,
    places: Vec<Place>,
    roots: Mutex<RootSystem>,
    /// Generator image at each place, to double precision.
    float_roots: OnceLock<Vec<Complex<f64>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("minpoly", &self.minpoly.to_string())
            .field("signature", &self.signature)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Define `Q[x]/(minpoly)`, verifying monicity and irreducibility and
    /// isolating every root.
    pub fn new(minpoly: Polynomial) -> Result<Arc<Self>> {
        let d = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidPolynomial("degree must be at least 1".into()))?;
        if !minpoly.is_monic() {
            return Err(Error::NotMonic(minpoly.leading().to_string()));
        }
        if d > MAX_GENERIC_DEGREE {
            return Err(Error::DegreeTooLarge(d, MAX_GENERIC_DEGREE));
        }
        let g = minpoly.gcd(&minpoly.derivative());
        if g.degree() != Some(0) {
            return Err(Error::Reducible {
                factor: g.to_string(),
            });
        }
        let mut roots = RootSystem::isolate(&minpoly)?;
        if let Some(factor) = irreducible::find_factor(&mut roots)? {
            return Err(Error::Reducible {
                factor: factor.to_string(),
            });
        }
        Ok(Arc::new(Self::assemble(minpoly, roots)))
    }

    /// `Q(zeta_n)`, defined by the cyclotomic polynomial, whose irreducibility
    /// is classical and therefore not re-verified (this also admits degrees
    /// above the generic limit).
    pub fn cyclotomic(n: u64) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidPolynomial(
                "cyclotomic index must be positive".into(),
            ));
        }
        let p = Polynomial::cyclotomic(n);
        let roots = RootSystem::isolate(&p)?;
        Ok(Arc::new(Self::assemble(p, roots)))
    }

    /// `Q` itself, as `Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Self::new(Polynomial::x()).expect("x is irreducible")
    }

    /// `Q(sqrt(n))` via `x^2 - n`.
    pub fn quadratic(n: i64) -> Result<Arc<Self>> {
        Self::new(Polynomial::from_i64(&[-n, 0, 1]))
    }

    fn assemble(minpoly: Polynomial, roots: RootSystem) -> Self {
        let d = minpoly.degree().expect("nonzero");
        // a^d = -(c_0 + ... + c_{d-1} a^{d-1})
        let mut reduction: Vec<Vec<Rational>> = Vec::with_capacity(d);
        let mut cur: Vec<Rational> = minpoly.coeffs()[..d].iter().map(|c| -c).collect();
        for _ in 0..d {
            reduction.push(cur.clone());
            // multiply by a
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            for k in 1..d {
                next[k] = cur[k - 1].clone();
            }
            for k in 0..d {
                next[k] += &top * &reduction[0][k];
            }
            cur = next;
        }
        let places = (0..roots.real_count())
            .map(|i| Place {
                kind: PlaceKind::Real,
                index: i,
                root_box: roots.box_of(RootRef::Real(i)),
            })
            .chain((0..roots.complex_count()).map(|j| Place {
                kind: PlaceKind::ComplexPair,
                index: j,
                root_box: roots.box_of(RootRef::Upper(j)),
            }))
            .collect();
        let mut field = NumberField {
            signature: (roots.real_count(), roots.complex_count()),
            minpoly,
            degree: d,
            reduction,
            power_traces: Vec::new(),
            places,
            float_roots: OnceLock::new(),
            roots: Mutex::new(roots),
        };
        field.power_traces = (0..d)
            .map(|k| {
                // trace of multiplication by a^k: sum_j coefficient of a^j in a^(k+j)
                (0..d)
                    .map(|j| field.power_coords(k + j)[j].clone())
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect();
        field
    }

    pub fn minpoly(&self) -> &Polynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(r, s)`: real places and complex pairs.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// Power-basis coordinates of `a^k`.
    pub fn power_coords(&self, k: usize) -> Vec<Rational> {
        let d = self.degree;
        if k < d {
            let mut v = vec![Rational::zero(); d];
            v[k] = Rational::one();
            v
        } else if d == 1 {
            // a = 0 in Q[x]/(x) up to the constant coefficient of the minpoly
            vec![self.reduction[0][0].pow(k as i32)]
        } else if k - d < self.reduction.len() {
            self.reduction[k - d].clone()
        } else {
            let half = self.power_coords(k / 2);
            let other = self.power_coords(k - k / 2);
            self.mul_coords(&half, &other)
        }
    }

    pub(crate) fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..d].to_vec();
        if d == 1 {
            return out;
        }
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.reduction[k].iter().enumerate() {
                out[j] += c * r;
            }
        }
        out
    }

    pub(crate) fn trace_coords(&self, a: &[Rational]) -> Rational {
        a.iter()
            .zip(&self.power_traces)
            .map(|(x, t)| x * t)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// `Tr(a^k)` for `k < d`.
    pub fn power_traces(&self) -> &[Rational] {
        &self.power_traces
    }

    /// The generator `a`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.degree == 1 {
            // In Q[x]/(x - c) the generator equals c.
            return FieldElement::from_rational(self, -self.minpoly.coeff(0));
        }
        FieldElement::new(self, self.power_coords(1)).expect("length d")
    }

    /// Dual basis of the power basis under the trace form: `Tr(e_i a^j) = delta_ij`.
    pub fn dual_basis(self: &Arc<Self>) -> Vec<FieldElement> {
        let d = self.degree;
        let gram: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.trace_coords(&self.power_coords(i + j)))
                    .collect()
            })
            .collect();
        let inv = invert_matrix(&gram).expect("trace form is nondegenerate");
        // e_i = sum_k inv[i][k] a^k  (gram is symmetric)
        (0..d)
            .map(|i| FieldElement::new(self, inv[i].clone()).expect("length d"))
            .collect()
    }

    /// Element of the inverse different with dual-basis coordinates `m`
    /// (equivalently, with `Tr(x a^j) = m_j`).
    pub fn from_dual_coords(self: &Arc<Self>, m: &[i64]) -> FieldElement {
        let basis = self.dual_basis();
        let mut acc = FieldElement::zero(self);
        for (e, &c) in basis.iter().zip(m) {
            acc = &acc + &e.scale(&int(c));
        }
        acc
    }

    pub(crate) fn with_roots<T>(&self, f: impl FnOnce(&mut RootSystem) -> T) -> T {
        let mut guard = self.roots.lock().unwrap_or_else(|e| e.into_inner());
        f(&mut guard)
    }

    /// Certified box for the generator's image at `place`, of width at most `width`.
    pub fn root_box(&self, place: &Place, width: &Rational) -> Result<CertifiedBox> {
        self.with_roots(|r| {
            r.refine(place.root_ref(), width)?;
            Ok(r.box_of(place.root_ref()))
        })
    }

    /// Generator image at every place (upper representative for complex
    /// pairs), rounded from a certified box of width `2^-64`.
    pub fn float_roots(&self) -> &[Complex<f64>] {
        self.float_roots.get_or_init(|| {
            let width = crate::rational::pow2_neg(64);
            self.places
                .iter()
                .map(|p| {
                    let b = self.root_box(p, &width).expect("refinement to 64 bits");
                    Complex::new(
                        crate::rational::to_f64(&b.re.mid()),
                        crate::rational::to_f64(&b.im.mid()),
                    )
                })
                .collect()
        })
    }

    /// Lowest common multiple of the minimal polynomial's denominators.
    pub fn denominator(&self) -> BigInt {
        crate::rational::lcm_of_denominators(self.minpoly.coeffs())
    }
}

/// Gauss-Jordan inverse over Q.
pub(crate) fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
