use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::IntegerSeries;
use crate::error::{Error, Result};
use crate::rational::{format_rational, from_f64, parse_rational, Rational};
use crate::scalar::{Coefficient, Mode};

#[derive(Serialize, Deserialize)]
struct Row {
    n: usize,
    re: String,
    im: String,
}

fn parse_part(s: &str) -> Result<Rational> {
    parse_rational(s).or_else(|_| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(from_f64)
            .ok_or_else(|| Error::Parse(format!("coefficient {s:?}")))
    })
}

/// Read CSV `n,re,im`; indices above `bound` are rejected, missing ones are zero.
/// Without a bound, `N` is the largest index present.
pub fn read_series_csv<C: Coefficient, R: Read>(
    input: R,
    bound: Option<usize>,
) -> Result<IntegerSeries<C>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for rec in rdr.deserialize::<Row>() {
        let row = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let c = C::from_parts(&parse_part(&row.re)?, &parse_part(&row.im)?);
        rows.push((row.n, c));
    }
    let n = bound.unwrap_or_else(|| rows.iter().map(|(n, _)| *n).max().unwrap_or(0));
    let mut s = IntegerSeries::zeros(n);
    for (k, c) in rows {
        if k == 0 || k > n {
            return Err(Error::NonIntegerIndex(format!("{k} (bound {n})")));
        }
        s.set(k, c);
    }
    Ok(s)
}

/// Write nonzero coefficients as CSV `n,re,im`; exact values as `p/q`.
pub fn write_series_csv<C: Coefficient, W: Write>(s: &IntegerSeries<C>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (n, c) in s.iter() {
        if c.is_zero() {
            continue;
        }
        let (re, im) = match C::MODE {
            Mode::Exact => {
                let (re, im) = c.to_parts();
                (format_rational(&re), format_rational(&im))
            }
            Mode::Approx => {
                let z = c.to_c64();
                (z.re.to_string(), z.im.to_string())
            }
        };
        w.serialize(Row { n, re, im })
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
