use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{c2f, EvalResult};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numberfield::FieldElement;
use crate::scalar::Coefficient;

/// `m_j = Tr(alpha a^j)`: the integer frequencies of the character
/// `x -> exp(2 pi i Tr(alpha x))` on the torus, in power-basis coordinates.
pub fn frequency_vector(alpha: &FieldElement) -> Result<Vec<i64>> {
    alpha
        .dual_coords()
        .ok_or_else(|| Error::NotInInverseDifferent(alpha.to_string()))?
        .iter()
        .map(|m| {
            m.to_i64()
                .ok_or_else(|| Error::NotInInverseDifferent(format!("frequency {m} too large")))
        })
        .collect()
}

struct Term {
    coeff: Complex<f64>,
    theta: Vec<f64>,
    l1: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InnerProductReport {
    pub grid: Vec<usize>,
    pub required: Vec<usize>,
    pub re: f64,
    pub im: f64,
    pub error_bound: f64,
}

/// `<f, g> = integral over the torus of f * conj(g)`, by the equal-weight
/// tensor grid. Exact (up to rounding) once every grid count exceeds twice the
/// largest frequency of either input.
pub fn torus_inner_product<C: Coefficient>(
    f: &AlgebraElement<C>,
    g: &AlgebraElement<C>,
    grid: &[usize],
) -> Result<(EvalResult<f64>, InnerProductReport)> {
    if **f.field() != **g.field() {
        return Err(Error::FieldMismatch);
    }
    let field = f.field();
    let d = field.degree();
    let grid: Vec<usize> = match grid.len() {
        1 => vec![grid[0]; d],
        n if n == d => grid.to_vec(),
        n => {
            return Err(Error::InvalidPoint(format!(
                "grid has {n} dimensions, field has degree {d}"
            )))
        }
    };
    let basis = field.basis_kinfinity::<f64>();
    let mut height = vec![0u64; d];
    // Tr(alpha z) is linear in the torus coordinates: per term, store the
    // phase Tr(alpha b_j) and its l1 size along each basis direction b_j.
    let mut prep = |h: &AlgebraElement<C>| -> Result<Vec<Term>> {
        h.terms()
            .map(|(alpha, c)| {
                let m = frequency_vector(alpha)?;
                for (hj, mj) in height.iter_mut().zip(&m) {
                    *hj = (*hj).max(mj.unsigned_abs());
                }
                let e = alpha.to_kinfinity::<f64>();
                let axes = basis.iter().map(|b| {
                    let p = e.mul(b);
                    (p.trace(), p.l1())
                });
                let (theta, l1) = axes.unzip();
                Ok(Term {
                    coeff: c2f(c),
                    theta,
                    l1,
                })
            })
            .collect()
    };
    let fs = prep(f)?;
    let gs = prep(g)?;
    let required: Vec<usize> = height.iter().map(|h| 2 * (*h as usize) + 1).collect();
    for (n, r) in grid.iter().zip(&required) {
        if n < r {
            return Err(Error::Bandwidth {
                grid: *n,
                required: *r,
            });
        }
    }
    let slack = std::f64::consts::TAU * f64::EPSILON * (d + 4) as f64;
    let total: usize = grid.iter().product();
    let mut acc = Complex::new(0.0, 0.0);
    let mut err = 0.0;
    let mut idx = vec![0usize; d];
    let mut u = vec![0.0f64; d];
    for _ in 0..total {
        for j in 0..d {
            u[j] = idx[j] as f64 / grid[j] as f64;
        }
        let eval = |terms: &[Term]| {
            terms.iter().fold((Complex::new(0.0, 0.0), 0.0), |(v, e), t| {
                let (phase, l1) = t
                    .theta
                    .iter()
                    .zip(&t.l1)
                    .zip(&u)
                    .fold((0.0, 0.0), |(p, l), ((th, l1), uj)| (p + th * uj, l + l1 * uj));
                let ch = Complex::from_polar(1.0, std::f64::consts::TAU * phase);
                let ch_err = slack * (l1 + phase.abs() + 1.0);
                (v + t.coeff * ch, e + t.coeff.norm() * ch_err)
            })
        };
        let (fv, fe) = eval(&fs);
        let (gv, ge) = eval(&gs);
        acc += fv * gv.conj();
        err += fe * gv.norm() + ge * fv.norm() + f64::EPSILON * fv.norm() * gv.norm();
        for j in 0..d {
            idx[j] += 1;
            if idx[j] < grid[j] {
                break;
            }
            idx[j] = 0;
        }
    }
    let scale = total as f64;
    let value = acc / scale;
    let error_bound = err / scale + (total as f64) * f64::EPSILON * value.norm().max(1.0);
    let report = InnerProductReport {
        grid: grid.clone(),
        required,
        re: value.re,
        im: value.im,
        error_bound,
    };
    Ok((EvalResult { value, error_bound }, report))
}
