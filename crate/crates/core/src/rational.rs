//! Exact rationals and the few numeric helpers the certified layers need.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^-bits` as a rational.
pub fn pow2_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Canonical text form: always `p/q`, even for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q`, `p`, and finite decimal literals like `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n = BigInt::from_str(&digits).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|e| Error::Parse(format!("{s}: {e}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Largest multiple of `2^-bits` that is `<= q`.
pub fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = q.numer() * &scale;
    Rational::new(scaled.div_floor(q.denom()), scale)
}

/// Smallest multiple of `2^-bits` that is `>= q`.
pub fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    -floor_dyadic(&-q, bits)
}

/// Nearest multiple of `2^-bits` (ties toward negative infinity).
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let half = pow2_neg(bits + 1);
    floor_dyadic(&(q + half), bits)
}

/// A rational upper bound for `sqrt(q)` within `2^-bits` of the true value.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    if !q.is_positive() {
        return Rational::zero();
    }
    // sqrt(q) <= ceil(sqrt(ceil(q * 4^k))) / 2^k
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (q.numer() * &scale).div_ceil(q.denom());
    let mut r = scaled.sqrt();
    if &r * &r < scaled {
        r += 1;
    }
    Rational::new(r, BigInt::one() << bits as usize)
}

/// Number of bits needed to resolve a positive width, i.e. `ceil(-log2 w)` clamped at 0.
pub fn bits_for_width(w: &Rational) -> u32 {
    if !w.is_positive() {
        return u32::MAX;
    }
    let mut bits = 0u32;
    let mut scaled = w.clone();
    while scaled < Rational::one() {
        scaled *= BigInt::from(2);
        bits += 1;
    }
    bits
}

pub fn sign_of(q: &Rational) -> Sign {
    if q.is_zero() {
        Sign::NoSign
    } else if q.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for q in [rat(3, 4), rat(-7, 2), int(5), int(0)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(format_rational(&int(3)), "3/1");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let q = rat(1, 3);
        let lo = floor_dyadic(&q, 10);
        let hi = ceil_dyadic(&q, 10);
        assert!(lo <= q && q <= hi);
        assert_eq!(&hi - &lo, pow2_neg(10));
        assert_eq!(floor_dyadic(&rat(-1, 3), 2), rat(-1, 2));
    }

    #[test]
    fn sqrt_upper_is_upper_and_tight() {
        let two = int(2);
        let r = sqrt_upper(&two, 40);
        assert!(&r * &r >= two);
        assert!(&r - pow2_neg(39) < from_f64(std::f64::consts::SQRT_2));
        assert_eq!(sqrt_upper(&int(9), 5), int(3));
    }

    #[test]
    fn width_bits() {
        assert_eq!(bits_for_width(&pow2_neg(53)), 53);
        assert_eq!(bits_for_width(&rat(3, 16)), 3);
        assert_eq!(bits_for_width(&int(4)), 0);
    }
}
