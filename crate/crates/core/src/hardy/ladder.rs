use std::io::Write;

use serde::Serialize;

use super::{boundary_eval, series_eval_hyper, HyperPoint};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numberfield::KInfinity;
use crate::scalar::Coefficient;
use crate::signs::grade;

/// One rung of a decay sweep above a fixed boundary point.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LadderRow {
    pub t: f64,
    pub abs_value: f64,
    pub bound: f64,
    /// `|hyper value - boundary value|`.
    pub boundary_gap: f64,
}

/// Evaluate `f` at heights `ts` above `x` and compare with the boundary value.
pub fn decay_ladder<C: Coefficient>(
    f: &AlgebraElement<C>,
    x: &KInfinity<f64>,
    ts: &[f64],
) -> Result<Vec<LadderRow>> {
    let graded = grade(f)?;
    let edge = boundary_eval(f, x);
    ts.iter()
        .map(|&t| {
            let p = HyperPoint::above(x, t)?;
            let r = series_eval_hyper(f, &graded, &p)?;
            Ok(LadderRow {
                t,
                abs_value: r.value.norm(),
                bound: r.error_bound,
                boundary_gap: (r.value - edge.value).norm(),
            })
        })
        .collect()
}

/// CSV with header `t,abs_value,bound,boundary_gap`.
pub fn write_ladder_csv<W: Write>(rows: &[LadderRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::rational::int;
    use num_complex::Complex;

    #[test]
    fn ladder_gap_shrinks() {
        let q = NumberField::rationals();
        let f = AlgebraElement::from_integer_terms(
            &q,
            &[
                (1, Complex::new(int(1), int(0))),
                (3, Complex::new(int(2), int(-1))),
            ],
        );
        let ts: Vec<f64> = (4..10).map(|k| 0.5f64.powi(k)).collect();
        let rows = decay_ladder(&f, &KInfinity::new(vec![0.3], vec![]), &ts).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].boundary_gap < w[0].boundary_gap);
        }
        let mut buf = Vec::new();
        write_ladder_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,abs_value,bound,boundary_gap\n"));
        assert_eq!(text.lines().count(), 7);
    }
}
