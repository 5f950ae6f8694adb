use num_complex::Complex;
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::hardy::l2_norm;
use crate::numberfield::{trace_on_infinity, FieldElement, KInfinity, NumberField};
use crate::report::{CheckReport, Failure};
use crate::sample::{random_approx, IndexShape};
use crate::scalar::{Coefficient, Real};

/// A point `r` of `K_inf` indexing the flows.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowParameter<F>(KInfinity<F>);

impl<F: Real> FlowParameter<F> {
    pub fn new(r: KInfinity<F>) -> Result<Self> {
        let finite = r.real.iter().all(|x| x.is_finite())
            && r.complex
                .iter()
                .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::InvalidPoint("flow parameter must be finite".into()));
        }
        Ok(FlowParameter(r))
    }

    /// `r` on the diagonal: every real place `q`, every complex place `q`.
    pub fn rational(field: &NumberField, q: F) -> Self {
        let (r, s) = field.signature();
        FlowParameter(KInfinity::new(
            vec![q; r],
            vec![Complex::new(q, F::zero()); s],
        ))
    }

    pub fn get(&self) -> &KInfinity<F> {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        FlowParameter(self.0.add(&other.0))
    }
}

fn phase<F: Real>(x: F) -> Complex<F> {
    Complex::from_polar(F::one(), F::TAU() * x)
}

fn check_signature<F: Real>(r: &FlowParameter<F>, field: &NumberField) -> Result<()> {
    if r.0.signature() != field.signature() {
        return Err(Error::InvalidPoint(format!(
            "flow parameter has signature {:?}, field has {:?}",
            r.0.signature(),
            field.signature()
        )));
    }
    Ok(())
}

/// `Phi_r(sum a_alpha z^alpha) = sum a_alpha exp(2 pi i Tr(alpha r)) z^alpha`.
pub fn flow_phi<F: Real>(
    r: &FlowParameter<F>,
    f: &AlgebraElement<Complex<F>>,
) -> Result<AlgebraElement<Complex<F>>>
where
    Complex<F>: Coefficient,
{
    check_signature(r, f.field())?;
    let terms: Vec<_> = f
        .terms()
        .map(|(alpha, c)| {
            let t = trace_on_infinity(&alpha.to_kinfinity::<F>().mul(&r.0));
            (alpha.clone(), *c * phase(t))
        })
        .collect();
    AlgebraElement::from_terms(f.field(), terms)
}

/// `log|alpha|` at every place; complex places carry a real value.
fn log_abs<F: Real>(alpha: &FieldElement) -> KInfinity<F> {
    let e = alpha.to_kinfinity::<F>();
    KInfinity::new(
        e.real.iter().map(|x| x.abs().ln()).collect(),
        e.complex
            .iter()
            .map(|z| Complex::new(z.norm().ln(), F::zero()))
            .collect(),
    )
}

/// `Psi_r(sum a_alpha z^alpha) = sum a_alpha exp(2 pi i Tr(r log|alpha|)) z^alpha`;
/// the coefficient at `alpha = 0` is left unchanged.
pub fn flow_psi<F: Real>(
    r: &FlowParameter<F>,
    f: &AlgebraElement<Complex<F>>,
) -> Result<AlgebraElement<Complex<F>>>
where
    Complex<F>: Coefficient,
{
    check_signature(r, f.field())?;
    let terms: Vec<_> = f
        .terms()
        .map(|(alpha, c)| {
            if alpha.is_zero() {
                return (alpha.clone(), *c);
            }
            let t = trace_on_infinity(&log_abs::<F>(alpha).mul(&r.0));
            (alpha.clone(), *c * phase(t))
        })
        .collect();
    AlgebraElement::from_terms(f.field(), terms)
}

fn random_parameter<R: Rng + ?Sized>(field: &NumberField, rng: &mut R) -> FlowParameter<f64> {
    let (r, s) = field.signature();
    FlowParameter(KInfinity::new(
        (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        (0..s)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    ))
}

type Approx = AlgebraElement<Complex<f64>>;

fn approx_eq(a: &Approx, b: &Approx, tol: f64) -> (bool, f64) {
    let delta = a
        .checked_sub(b)
        .map(|d| d.terms().map(|(_, c)| c.norm()).fold(0.0f64, f64::max));
    let delta = delta.unwrap_or(f64::INFINITY);
    let scale = a
        .terms()
        .chain(b.terms())
        .map(|(_, c)| c.norm())
        .fold(1.0f64, f64::max);
    (delta <= tol * scale, delta)
}

fn failure(inputs: &[&Approx], lhs: &Approx, rhs: &Approx, delta: f64) -> Failure {
    Failure {
        inputs: inputs.iter().map(|f| f.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        delta,
    }
}

/// The flow property suite on random triples `(r, f, g)` at tolerance `tol`:
/// `Phi_r` is a Cauchy homomorphism, `Psi_r` a Dirichlet homomorphism on
/// elements without constant term, both preserve the l2 norm and fix
/// monomials projectively, and `Phi_{r+r'} = Phi_r o Phi_r'`, likewise `Psi`.
pub fn verify_flows<R: Rng + ?Sized>(
    field: &std::sync::Arc<NumberField>,
    samples: usize,
    shape: IndexShape,
    tol: f64,
    rng: &mut R,
) -> Result<Vec<CheckReport>> {
    let mut phi_hom = CheckReport::new("flows.phi_cauchy_homomorphism");
    let mut psi_hom = CheckReport::new("flows.psi_dirichlet_homomorphism");
    let mut norm = CheckReport::new("flows.l2_norm_preserved");
    let mut proj = CheckReport::new("flows.projective_monomial_fixing");
    let mut phi_group = CheckReport::new("flows.phi_group_law");
    let mut psi_group = CheckReport::new("flows.psi_group_law");
    for _ in 0..samples {
        let r = random_parameter(field, rng);
        let r2 = random_parameter(field, rng);
        let f: Approx = random_approx(field, rng, 6, shape);
        let g: Approx = random_approx(field, rng, 6, shape);

        let lhs = flow_phi(&r, &f.cauchy_product(&g)?)?;
        let rhs = flow_phi(&r, &f)?.cauchy_product(&flow_phi(&r, &g)?)?;
        let (ok, d) = approx_eq(&lhs, &rhs, tol);
        phi_hom.record(ok, || failure(&[&f, &g], &lhs, &rhs, d));

        let f0 = f.filter(|a| !a.is_zero());
        let g0 = g.filter(|a| !a.is_zero());
        let lhs = flow_psi(&r, &f0.dirichlet_product(&g0)?)?;
        let rhs = flow_psi(&r, &f0)?.dirichlet_product(&flow_psi(&r, &g0)?)?;
        let (ok, d) = approx_eq(&lhs, &rhs, tol);
        psi_hom.record(ok, || failure(&[&f0, &g0], &lhs, &rhs, d));

        let n = l2_norm(&f);
        for h in [flow_phi(&r, &f)?, flow_psi(&r, &f)?] {
            let m = l2_norm(&h);
            norm.record((m - n).abs() <= tol * n.max(1.0), || Failure {
                inputs: vec![f.to_string()],
                lhs: format!("{m:e}"),
                rhs: format!("{n:e}"),
                delta: (m - n).abs(),
            });
        }

        if let Some((alpha, _)) = f.terms().next() {
            let mono = AlgebraElement::monomial(alpha, Complex::new(1.0, 0.0));
            for h in [flow_phi(&r, &mono)?, flow_psi(&r, &mono)?] {
                let c = h.coeff(alpha);
                // cross-multiplied: c * 1 == 1 * c up to a unit scalar
                let ok = h.len() == 1 && (c.norm() - 1.0).abs() <= tol && mono.projective_eq(&h);
                proj.record(ok, || failure(&[&mono], &h, &mono, (c.norm() - 1.0).abs()));
            }
        }

        let rr = r.add(&r2);
        let lhs = flow_phi(&rr, &f)?;
        let rhs = flow_phi(&r, &flow_phi(&r2, &f)?)?;
        let (ok, d) = approx_eq(&lhs, &rhs, tol);
        phi_group.record(ok, || failure(&[&f], &lhs, &rhs, d));
        let lhs = flow_psi(&rr, &f)?;
        let rhs = flow_psi(&r, &flow_psi(&r2, &f)?)?;
        let (ok, d) = approx_eq(&lhs, &rhs, tol);
        psi_group.record(ok, || failure(&[&f], &lhs, &rhs, d));
    }
    Ok(vec![phi_hom, psi_hom, norm, proj, phi_group, psi_group])
}
