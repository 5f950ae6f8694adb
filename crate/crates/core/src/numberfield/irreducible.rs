//! Irreducibility over Q from certified roots.
//!
//! Let `c` clear the denominators of the monic `p`, so `c^d p(x/c)` is monic
//! with integer coefficients. A monic factor of `p` corresponds to a set of
//! roots `S`, closed under conjugation, for which `prod_{r in S} (x - c r)` has
//! integer coefficients (Gauss). Interval products of the root boxes either
//! exclude an integer from some coefficient (no factor) or pin every
//! coefficient to one integer, which is then tested by exact division.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::interval::Interval;
use crate::poly::Polynomial;
use crate::rational::{int, lcm_of_denominators, pow2_neg, Rational};
use crate::roots::{RootRef, RootSystem};

enum Unit {
    Real(usize),
    Pair(usize),
}

impl Unit {
    fn size(&self) -> usize {
        match self {
            Unit::Real(_) => 1,
            Unit::Pair(_) => 2,
        }
    }
}

enum Verdict {
    NotAFactor,
    Factor(Polynomial),
    Undecided,
}

/// A nontrivial monic factor of the system's polynomial, if one exists.
pub(super) fn find_factor(roots: &mut RootSystem) -> Result<Option<Polynomial>> {
    let p = roots.poly().clone();
    let d = p.degree().expect("nonzero");
    if d < 2 {
        return Ok(None);
    }
    let c = Rational::from_integer(lcm_of_denominators(p.coeffs()));
    // q(x) = c^d p(x/c)
    let q = Polynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| a * c.pow((d - k) as i32))
            .collect(),
    );
    let units: Vec<Unit> = (0..roots.real_count())
        .map(Unit::Real)
        .chain((0..roots.complex_count()).map(Unit::Pair))
        .collect();
    let mut pending: Vec<Vec<usize>> = Vec::new();
    // Enumerate subsets of units whose root count is in 1..=d/2.
    let n = units.len();
    for mask in 1u64..(1u64 << n) {
        let size: usize = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| units[i].size())
            .sum();
        if size <= d / 2 {
            pending.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    let mut bits = 24u32;
    while !pending.is_empty() {
        roots.refine_all(&pow2_neg(bits))?;
        let mut still = Vec::new();
        for subset in pending {
            match test_subset(roots, &units, &subset, &c, &q) {
                Verdict::NotAFactor => {}
                Verdict::Factor(g) => {
                    // back to p's variable: g(c x) / c^k
                    let k = g.degree().expect("nonzero");
                    let back = Polynomial::new(
                        g.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(j, a)| a * c.pow(j as i32) / c.pow(k as i32))
                            .collect(),
                    );
                    return Ok(Some(back));
                }
                Verdict::Undecided => still.push(subset),
            }
        }
        pending = still;
        bits *= 2;
    }
    Ok(None)
}

fn test_subset(
    roots: &RootSystem,
    units: &[Unit],
    subset: &[usize],
    c: &Rational,
    q: &Polynomial,
) -> Verdict {
    // Coefficient intervals of prod (x - c r), lowest degree first.
    let mut coeffs: Vec<Interval> = vec![Interval::point(Rational::one())];
    for &u in subset {
        let factor: Vec<Interval> = match units[u] {
            Unit::Real(i) => {
                let b = roots.box_of(RootRef::Real(i));
                vec![-&b.re.scale(c), Interval::point(Rational::one())]
            }
            Unit::Pair(j) => {
                // (x - c z)(x - c conj z) = x^2 - 2c Re z x + c^2 |z|^2
                let b = roots.box_of(RootRef::Upper(j));
                let norm = &b.re.sqr() + &b.im.sqr();
                vec![
                    norm.scale(&(c * c)),
                    -&b.re.scale(&(c * int(2))),
                    Interval::point(Rational::one()),
                ]
            }
        };
        let mut next = vec![Interval::zero(); coeffs.len() + factor.len() - 1];
        for (i, a) in coeffs.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        coeffs = next;
    }
    let mut exact = Vec::with_capacity(coeffs.len());
    let mut undecided = false;
    for iv in &coeffs {
        if !iv.contains_integer() {
            return Verdict::NotAFactor;
        }
        match iv.unique_integer() {
            Some(n) => exact.push(Rational::from_integer(n)),
            None => {
                undecided = true;
                exact.push(Rational::from_integer(BigInt::zero()));
            }
        }
    }
    if undecided {
        return Verdict::Undecided;
    }
    let g = Polynomial::new(exact);
    match q.div_rem(&g) {
        Ok((_, r)) if r.is_zero() => Verdict::Factor(g),
        _ => Verdict::NotAFactor,
    }
}
