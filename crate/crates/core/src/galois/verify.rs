use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use super::{Automorphism, GaloisGroup, GroupFamily};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::hardy::l2_norm;
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::rational::{format_rational, int};
use crate::report::{CheckReport, Failure};
use crate::sample::{random_exact, random_index, IndexShape};
use crate::scalar::{Coefficient, GaussianRational};
use crate::signs::{grade_with, Grader, SignVector};

type Exact = AlgebraElement<GaussianRational>;

fn mismatch(inputs: &[&Exact], lhs: &Exact, rhs: &Exact) -> Failure {
    let delta = lhs
        .checked_sub(rhs)
        .map(|d| l2_norm(&d))
        .unwrap_or(f64::NAN);
    Failure {
        inputs: inputs.iter().map(|f| f.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        delta,
    }
}

/// Record `sign(alpha) -> sign(sigma(alpha))` for each nonzero index of `f`
/// into `iota`; returns the first conflicting assignment, if any.
pub fn sign_permutation(
    sigma: &Automorphism,
    f: &Exact,
    grader: &mut Grader,
    iota: &mut BTreeMap<SignVector, SignVector>,
) -> Result<Option<(SignVector, SignVector, SignVector)>> {
    for alpha in f.support() {
        if alpha.is_zero() {
            continue;
        }
        let from = grader.sign(alpha)?;
        let to = grader.sign(&sigma.apply(alpha)?)?;
        match iota.get(&from) {
            Some(prev) if *prev != to => return Ok(Some((from, prev.clone(), to))),
            Some(_) => {}
            None => {
                iota.insert(from, to);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonlinearReport {
    pub automorphism: String,
    pub checks: Vec<CheckReport>,
    /// Observed grading permutation, as pairs of sign-vector strings.
    pub iota: Vec<(Vec<String>, Vec<String>)>,
}

impl NonlinearReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(CheckReport::pass)
    }

    pub fn iota_map(&self) -> BTreeMap<Vec<String>, Vec<String>> {
        self.iota.iter().cloned().collect()
    }
}

/// On random exact pairs: `sigma` respects both products and the trace, and
/// permutes the sign grading by one consistent map.
pub fn verify_nonlinear_automorphism<R: Rng + ?Sized>(
    sigma: &Automorphism,
    samples: usize,
    shape: IndexShape,
    rng: &mut R,
) -> Result<NonlinearReport> {
    let field = sigma.field().clone();
    let mut cauchy = CheckReport::new("galois.cauchy_homomorphism");
    let mut dirichlet = CheckReport::new("galois.dirichlet_homomorphism");
    let mut trace = CheckReport::new("galois.trace_preserved");
    let mut grading = CheckReport::new("galois.grading_permutation");
    let mut grader = Grader::new();
    let mut iota = BTreeMap::new();
    for _ in 0..samples {
        let f = random_exact(&field, rng, 6, shape);
        let g = random_exact(&field, rng, 6, shape);
        let sf = sigma.apply_to_algebra(&f)?;
        let sg = sigma.apply_to_algebra(&g)?;

        let lhs = sigma.apply_to_algebra(&f.cauchy_product(&g)?)?;
        let rhs = sf.cauchy_product(&sg)?;
        cauchy.record(lhs == rhs, || mismatch(&[&f, &g], &lhs, &rhs));

        let lhs = sigma.apply_to_algebra(&f.dirichlet_product(&g)?)?;
        let rhs = sf.dirichlet_product(&sg)?;
        dirichlet.record(lhs == rhs, || mismatch(&[&f, &g], &lhs, &rhs));

        let (tf, tsf) = (f.trace(), sf.trace());
        trace.record(tf == tsf, || Failure {
            inputs: vec![f.to_string()],
            lhs: format!("{tf}"),
            rhs: format!("{tsf}"),
            delta: (tf.to_c64() - tsf.to_c64()).norm(),
        });

        let conflict = sign_permutation(sigma, &f, &mut grader, &mut iota)?;
        let df = grade_with(&f, &mut grader)?;
        let dsf = grade_with(&sf, &mut grader)?;
        let mut ok = conflict.is_none();
        let mut witness = None;
        if let Some((from, a, b)) = &conflict {
            witness = Some(Failure {
                inputs: vec![f.to_string()],
                lhs: format!("{from} -> {a}"),
                rhs: format!("{from} -> {b}"),
                delta: f64::NAN,
            });
        } else {
            for (v, part) in df.components() {
                let lhs = sigma.apply_to_algebra(part)?;
                let rhs = dsf.component(&iota[v]);
                if lhs != rhs {
                    ok = false;
                    witness = Some(mismatch(&[&f], &lhs, &rhs));
                    break;
                }
            }
            ok &= df.constant() == dsf.constant();
        }
        grading.record(ok, || {
            witness.unwrap_or_else(|| Failure {
                inputs: vec![f.to_string()],
                lhs: "constant term".into(),
                rhs: "constant term".into(),
                delta: f64::NAN,
            })
        });
    }
    Ok(NonlinearReport {
        automorphism: format!("a -> {}", sigma.image()),
        checks: vec![cauchy, dirichlet, trace, grading],
        iota: iota
            .into_iter()
            .map(|(a, b)| (a.to_strings(), b.to_strings()))
            .collect(),
    })
}

/// An embedding `K -> L` given by the image of `K`'s generator.
#[derive(Clone, Debug)]
pub struct TowerEmbedding {
    base: Arc<NumberField>,
    ext: Arc<NumberField>,
    image: FieldElement,
    powers: Vec<FieldElement>,
}

fn eval_at(p: &Polynomial, x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(x.field());
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &FieldElement::from_rational(x.field(), c.clone());
    }
    acc
}

impl TowerEmbedding {
    pub fn new(base: &Arc<NumberField>, image: &FieldElement) -> Result<Self> {
        if !eval_at(base.minpoly(), image).is_zero() {
            return Err(Error::InvalidTower(format!(
                "{} is not a root of {}",
                image,
                base.minpoly()
            )));
        }
        let mut powers = Vec::with_capacity(base.degree());
        let mut p = FieldElement::one(image.field());
        for _ in 0..base.degree() {
            powers.push(p.clone());
            p = &p * image;
        }
        Ok(TowerEmbedding {
            base: base.clone(),
            ext: image.field().clone(),
            image: image.clone(),
            powers,
        })
    }

    pub fn base(&self) -> &Arc<NumberField> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<NumberField> {
        &self.ext
    }

    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    pub fn map(&self, x: &FieldElement) -> Result<FieldElement> {
        if **x.field() != *self.base {
            return Err(Error::FieldMismatch);
        }
        let mut acc = FieldElement::zero(&self.ext);
        for (c, p) in x.coords().iter().zip(&self.powers) {
            acc = &acc + &p.scale(c);
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedFieldReport {
    pub generator_fixed: bool,
    pub monomials: CheckReport,
    pub automorphism: NonlinearReport,
}

impl FixedFieldReport {
    pub fn pass(&self) -> bool {
        self.generator_fixed && self.monomials.pass() && self.automorphism.pass()
    }
}

/// Whether `sigma` fixes the embedded base field, checked on the generator
/// and on sampled monomials `z^iota(beta)`, together with the nonlinear
/// automorphism suite for `sigma`.
pub fn fixed_field_check<R: Rng + ?Sized>(
    sigma: &Automorphism,
    tower: &TowerEmbedding,
    samples: usize,
    rng: &mut R,
) -> Result<FixedFieldReport> {
    if **sigma.field() != *tower.ext {
        return Err(Error::FieldMismatch);
    }
    let generator_fixed = sigma.apply(&tower.image)? == tower.image;
    let mut monomials = CheckReport::new("galois.fixed_monomials");
    let shape = IndexShape {
        height: 10,
        max_den: 3,
    };
    let one = GaussianRational::new(int(1), int(0));
    for _ in 0..samples {
        let beta = random_index(&tower.base, rng, shape);
        let m = AlgebraElement::monomial(&tower.map(&beta)?, one.clone());
        let sm = sigma.apply_to_algebra(&m)?;
        monomials.record(sm == m, || mismatch(&[&m], &sm, &m));
    }
    let automorphism = verify_nonlinear_automorphism(sigma, samples, shape, rng)?;
    Ok(FixedFieldReport {
        generator_fixed,
        monomials,
        automorphism,
    })
}

/// `sum_sigma sigma(alpha)` over the supplied automorphisms.
pub fn relative_trace(alpha: &FieldElement, autos: &[Automorphism]) -> Result<FieldElement> {
    let mut acc = FieldElement::zero(alpha.field());
    for s in autos {
        acc = &acc + &s.apply(alpha)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseRow {
    pub k: u32,
    pub degree: usize,
    /// `Tr(zeta^j)` for `j = 0..d`, as the Galois sum.
    pub traces: Vec<String>,
    /// The Galois sum agrees with the trace of the multiplication map.
    pub agrees_with_field_trace: bool,
    /// Positive generator of the trace image of `Z[zeta]`.
    pub image_generator: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub rows: Vec<CollapseRow>,
    pub pass: bool,
}

/// For `Q(zeta_{2^k})`, `k = 2..=k_max`: `Tr(1) = d`, `Tr(zeta^j) = 0` for
/// `0 < j < d`, so `Tr(Z[zeta]) = dZ`.
pub fn cyclotomic_trace_collapse(k_max: u32) -> Result<CollapseReport> {
    let mut rows = Vec::new();
    for k in 2..=k_max {
        let n = 1u64 << k;
        let field = NumberField::cyclotomic(n)?;
        let group = GaloisGroup::from_family(&field, &GroupFamily::Cyclotomic(n))?;
        let d = field.degree();
        let a = field.generator();
        let mut traces = Vec::with_capacity(d);
        let mut agrees = true;
        let mut gen = num_bigint::BigInt::zero();
        let mut power = FieldElement::one(&field);
        for _ in 0..d {
            let t = relative_trace(&power, group.elements())?;
            let q = t
                .as_rational()
                .ok_or_else(|| Error::NotAnAutomorphism("Galois sum is not rational".into()))?;
            agrees &= q == power.trace();
            if q.is_integer() {
                gen = gen.gcd(&q.to_integer());
            } else {
                agrees = false;
            }
            traces.push(format_rational(&q));
            power = &power * &a;
        }
        let d_rat = int(d as i64);
        let pass = agrees
            && traces[0] == format_rational(&d_rat)
            && traces[1..].iter().all(|t| t == "0/1")
            && gen.to_usize() == Some(d);
        rows.push(CollapseRow {
            k,
            degree: d,
            traces,
            agrees_with_field_trace: agrees,
            image_generator: gen.to_string(),
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CollapseReport { rows, pass })
}
