//! Certified isolation of all complex roots of a square-free rational polynomial.
//!
//! Real roots come from Sturm sequences and are refined by bisection. Non-real
//! roots are approximated in floating point (Aberth), polished by
//! Weierstrass-Durand-Kerner steps in dyadic rational arithmetic, and certified
//! with Smith's inclusion disks: if the disks `|z - c_i| <= n |W_i|` are pairwise
//! disjoint, each holds exactly one root. Approximations are kept conjugation
//! symmetric, so a disk centered on the real axis holds a real root and a disk
//! strictly above it holds a root with positive imaginary part.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{CertifiedBox, Interval};
use crate::poly::{Polynomial, RealRootInterval};
use crate::rational::{
    bits_for_width, from_f64, int, pow2_neg, round_dyadic, sqrt_upper, to_f64, Rational,
};

const MAX_BITS: u32 = 1 << 15;

/// Which root of the system a box belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootRef {
    Real(usize),
    /// Representative with positive imaginary part.
    Upper(usize),
    /// Complex conjugate of `Upper(j)`.
    Lower(usize),
}

#[derive(Clone, Debug)]
struct ComplexRoot {
    center: (Rational, Rational),
    bbox: CertifiedBox,
}

/// All roots of a monic square-free polynomial, each in a certified box.
///
/// Reals are ordered ascending; upper representatives by ascending real part,
/// then ascending imaginary part.
#[derive(Clone, Debug)]
pub struct RootSystem {
    poly: Polynomial,
    real: Vec<RealRootInterval>,
    upper: Vec<ComplexRoot>,
    bits: u32,
}

type C = (Rational, Rational);

fn c_sub(a: &C, b: &C) -> C {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn c_mul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn c_norm_sqr(a: &C) -> Rational {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn c_div(a: &C, b: &C) -> Option<C> {
    let n = c_norm_sqr(b);
    if n.is_zero() {
        return None;
    }
    let conj = (b.0.clone(), -&b.1);
    let p = c_mul(a, &conj);
    Some((&p.0 / &n, &p.1 / &n))
}

fn c_round(a: &C, bits: u32) -> C {
    (round_dyadic(&a.0, bits), round_dyadic(&a.1, bits))
}

fn c_eval(p: &Polynomial, z: &C) -> C {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = c_mul(&acc, z);
        acc.0 += c;
    }
    acc
}

/// Simultaneous root approximation in double precision.
fn aberth(p: &Polynomial) -> Vec<Complex64> {
    let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for c in coeffs.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    let lc = coeffs[n];
    let radius = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(k, c)| (c / lc).abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::one() / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    z
}

impl RootSystem {
    /// Isolate every root of `poly`, which must be monic and square-free.
    pub fn isolate(poly: &Polynomial) -> Result<Self> {
        let d = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidPolynomial("degree must be at least 1".into()))?;
        if !poly.is_monic() {
            return Err(Error::NotMonic(poly.leading().to_string()));
        }
        if !poly.is_square_free() {
            return Err(Error::RootIsolation("polynomial is not square-free".into()));
        }
        let real = poly.isolate_real_roots();
        let s = (d - real.len()) / 2;
        let mut sys = RootSystem {
            poly: poly.clone(),
            real,
            upper: Vec::new(),
            bits: 64,
        };
        if s == 0 {
            return Ok(sys);
        }
        let mut approx = aberth(poly);
        approx.sort_by(|a, b| b.im.total_cmp(&a.im));
        if approx[s - 1].im <= 0.0 {
            return Err(Error::RootIsolation(
                "could not separate non-real root approximations".into(),
            ));
        }
        let mut centers: Vec<C> = approx[..s]
            .iter()
            .map(|z| (from_f64(z.re), from_f64(z.im)))
            .collect();
        let mut bits = 64;
        loop {
            sys.polish(&mut centers, bits);
            if let Some(boxes) = sys.certify(&centers, bits) {
                let mut roots: Vec<ComplexRoot> = centers
                    .into_iter()
                    .zip(boxes)
                    .map(|(center, bbox)| ComplexRoot { center, bbox })
                    .collect();
                roots.sort_by(|a, b| {
                    a.center
                        .0
                        .cmp(&b.center.0)
                        .then_with(|| a.center.1.cmp(&b.center.1))
                });
                sys.upper = roots;
                sys.bits = bits;
                return Ok(sys);
            }
            bits *= 2;
            if bits > MAX_BITS {
                return Err(Error::RootIsolation(format!(
                    "certification failed up to 2^-{MAX_BITS}"
                )));
            }
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn real_count(&self) -> usize {
        self.real.len()
    }

    pub fn complex_count(&self) -> usize {
        self.upper.len()
    }

    pub fn box_of(&self, r: RootRef) -> CertifiedBox {
        match r {
            RootRef::Real(i) => CertifiedBox::real(Interval::new(
                self.real[i].lo.clone(),
                self.real[i].hi.clone(),
            )),
            RootRef::Upper(j) => self.upper[j].bbox.clone(),
            RootRef::Lower(j) => self.upper[j].bbox.conj(),
        }
    }

    pub fn all_refs(&self) -> Vec<RootRef> {
        (0..self.real.len())
            .map(RootRef::Real)
            .chain((0..self.upper.len()).map(RootRef::Upper))
            .chain((0..self.upper.len()).map(RootRef::Lower))
            .collect()
    }

    /// Refine a single root's box to width at most `width`.
    pub fn refine(&mut self, r: RootRef, width: &Rational) -> Result<()> {
        match r {
            RootRef::Real(i) => {
                self.real[i].refine(&self.poly, width);
                Ok(())
            }
            RootRef::Upper(_) | RootRef::Lower(_) => self.refine_complex(width),
        }
    }

    /// Refine every root to width at most `width`.
    pub fn refine_all(&mut self, width: &Rational) -> Result<()> {
        for i in 0..self.real.len() {
            self.real[i].refine(&self.poly, width);
        }
        self.refine_complex(width)
    }

    fn refine_complex(&mut self, width: &Rational) -> Result<()> {
        if self.upper.iter().all(|r| &r.bbox.width() <= width) {
            return Ok(());
        }
        let mut bits = self.bits.max(bits_for_width(width).saturating_add(16));
        let mut centers: Vec<C> = self.upper.iter().map(|r| r.center.clone()).collect();
        loop {
            if bits > MAX_BITS {
                return Err(Error::UndecidedNumerically(MAX_BITS));
            }
            self.polish(&mut centers, bits);
            if let Some(boxes) = self.certify(&centers, bits) {
                // Each new box holds exactly one root; it is ours if it meets
                // our old box and no other.
                let consistent = boxes.iter().enumerate().all(|(k, b)| {
                    self.upper
                        .iter()
                        .enumerate()
                        .all(|(j, old)| b.intersects(&old.bbox) == (j == k))
                });
                if consistent {
                    for (k, b) in boxes.into_iter().enumerate() {
                        let merged = b
                            .intersect(&self.upper[k].bbox)
                            .expect("checked intersection");
                        self.upper[k].bbox = merged;
                        self.upper[k].center = centers[k].clone();
                    }
                    self.bits = bits;
                    if self.upper.iter().all(|r| &r.bbox.width() <= width) {
                        return Ok(());
                    }
                }
            }
            bits *= 2;
        }
    }

    fn real_centers(&mut self, bits: u32) -> Vec<C> {
        let w = pow2_neg(bits);
        self.real
            .iter_mut()
            .map(|r| {
                r.refine(&self.poly, &w);
                ((&r.lo + &r.hi) / int(2), Rational::zero())
            })
            .collect()
    }

    /// Weierstrass corrections on the upper approximations, holding reals at
    /// their interval midpoints and lowers at the conjugates.
    fn polish(&mut self, centers: &mut [C], bits: u32) {
        let reals = self.real_centers(bits);
        let tol = pow2_neg(2 * bits - 8);
        for _ in 0..200 {
            let mut max_corr = Rational::zero();
            let snapshot: Vec<C> = centers.to_vec();
            for (k, z) in centers.iter_mut().enumerate() {
                let num = c_eval(&self.poly, &snapshot[k]);
                let mut den = (Rational::one(), Rational::zero());
                for (j, w) in snapshot.iter().enumerate() {
                    if j != k {
                        den = c_mul(&den, &c_sub(&snapshot[k], w));
                    }
                    den = c_mul(&den, &c_sub(&snapshot[k], &(w.0.clone(), -&w.1)));
                }
                for x in &reals {
                    den = c_mul(&den, &c_sub(&snapshot[k], x));
                }
                let Some(corr) = c_div(&num, &den) else {
                    continue;
                };
                let n = c_norm_sqr(&corr);
                if n > max_corr {
                    max_corr = n;
                }
                *z = c_round(&c_sub(&snapshot[k], &corr), bits);
            }
            if max_corr <= tol {
                break;
            }
        }
    }

    /// Smith-disk certification. Returns the upper boxes on success.
    fn certify(&mut self, centers: &[C], bits: u32) -> Option<Vec<CertifiedBox>> {
        let reals = self.real_centers(bits);
        let n = self.poly.degree().expect("nonzero") as i64;
        let mut all: Vec<C> = reals.clone();
        all.extend(centers.iter().cloned());
        all.extend(centers.iter().map(|z| (z.0.clone(), -&z.1)));
        let radius_bits = bits + 8;
        let radii: Vec<Rational> = (0..reals.len() + centers.len())
            .map(|i| {
                let num = c_eval(&self.poly, &all[i]);
                let mut den = (Rational::one(), Rational::zero());
                for (j, w) in all.iter().enumerate() {
                    if j != i {
                        den = c_mul(&den, &c_sub(&all[i], w));
                    }
                }
                let w = c_div(&num, &den)?;
                Some(sqrt_upper(&(c_norm_sqr(&w) * int(n * n)), radius_bits))
            })
            .collect::<Option<_>>()?;
        // Lower radii mirror the upper ones.
        let mut all_r = radii.clone();
        all_r.extend(radii[reals.len()..].iter().cloned());
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let sum = &all_r[i] + &all_r[j];
                if c_norm_sqr(&c_sub(&all[i], &all[j])) <= &sum * &sum {
                    return None;
                }
            }
        }
        let boxes: Vec<CertifiedBox> = centers
            .iter()
            .zip(&radii[reals.len()..])
            .map(|(z, r)| CertifiedBox::new(Interval::around(&z.0, r), Interval::around(&z.1, r)))
            .collect();
        for (k, b) in boxes.iter().enumerate() {
            if !b.im.lo.is_positive() {
                return None;
            }
            if boxes[k + 1..].iter().any(|o| o.intersects(b)) {
                return None;
            }
        }
        Some(boxes)
    }

    /// Refs whose current boxes meet `b`.
    pub fn candidates(&self, b: &CertifiedBox) -> Vec<RootRef> {
        self.all_refs()
            .into_iter()
            .filter(|&r| self.box_of(r).intersects(b))
            .collect()
    }
}
