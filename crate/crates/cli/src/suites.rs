//! Property suites behind `verify <suite>`. Each check is deterministic for a
//! fixed seed; known values come from a fixture document.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use nlfield::dirichlet::{IntegerSeries, Sieve};
use nlfield::galois::{
    cyclotomic_trace_collapse, fixed_field_check, relative_trace, verify_flows,
    verify_nonlinear_automorphism, TowerEmbedding,
};
use nlfield::hardy::{eval_hyper, torus_inner_product};
use nlfield::rational::int;
use nlfield::sample::{random_dual_index, random_exact, IndexShape};
use nlfield::signs::{check_graded_dirichlet_law, sign_of};
use nlfield::{
    AlgebraElement, Automorphism, CheckReport, ComplexSign, Failure, GaloisGroup,
    GaussianRational, GroupFamily, HyperPoint, NumberField, Polynomial,
};
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::expr::parse_algebra;

pub const SUITES: [&str; 7] = ["all", "algebra", "signs", "hardy", "galois", "flows", "dirichlet"];

pub const DEFAULT_FIXTURES: &str = include_str!("../fixtures/default.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Erratum {
    pub f: String,
    pub g: String,
    pub constant_rule: String,
    pub constant_alternative: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixtures {
    pub erratum: Erratum,
    pub divisor_count: Vec<i64>,
    pub mobius: Vec<i64>,
    pub trace_image: Vec<String>,
    pub group_orders: BTreeMap<String, usize>,
    pub group_exponents: BTreeMap<String, usize>,
    pub zeta5_trace: String,
    pub sqrt2_sign: Vec<String>,
    pub cube_root_signs: Vec<String>,
    pub hardy_decay: f64,
}

impl Fixtures {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("fixture document: {e}"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    /// Truncation bound for the Dirichlet suite.
    pub n: usize,
    pub fixtures: Fixtures,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

/// Outcome on success; `Err` for configuration problems (exit code 2).
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteOutcome, String> {
    let names: Vec<&str> = match name {
        "all" => SUITES[1..].to_vec(),
        n if SUITES.contains(&n) => vec![n],
        other => return Err(format!("unknown suite {other:?}; expected one of {SUITES:?}")),
    };
    let mut checks = Vec::new();
    for (i, n) in names.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        let res = match *n {
            "algebra" => algebra_suite(cfg, &mut rng),
            "signs" => signs_suite(cfg, &mut rng),
            "hardy" => hardy_suite(cfg, &mut rng),
            "galois" => galois_suite(cfg, &mut rng),
            "flows" => flows_suite(cfg, &mut rng),
            "dirichlet" => dirichlet_suite(cfg, &mut rng),
            _ => unreachable!(),
        };
        checks.extend(res.map_err(|e| format!("{n} suite: {e}"))?);
    }
    Ok(SuiteOutcome {
        suite: name.into(),
        seed: cfg.seed,
        samples: cfg.samples,
        pass: checks.iter().all(CheckReport::pass),
        checks,
    })
}

type Exact = AlgebraElement<GaussianRational>;
type SuiteResult = Result<Vec<CheckReport>, nlfield::Error>;

fn fail(inputs: Vec<String>, lhs: impl ToString, rhs: impl ToString) -> Failure {
    Failure {
        inputs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        delta: f64::NAN,
    }
}

fn single(check: &str, ok: bool, lhs: impl ToString, rhs: impl ToString) -> CheckReport {
    let mut r = CheckReport::new(check);
    r.record(ok, || fail(vec![], lhs, rhs));
    r
}

fn g(n: i64) -> GaussianRational {
    Complex::new(int(n), int(0))
}

/// Brute-force Dirichlet product: the double loop over nonzero index pairs,
/// and the constant term `a0 S(b) + b0 S(a) + a0 b0` with `S` the sum over
/// nonzero indices.
fn dirichlet_oracle(f: &Exact, h: &Exact) -> Exact {
    let k = f.field();
    let zero = nlfield::FieldElement::zero(k);
    let mut terms = Vec::new();
    for (a, x) in f.terms() {
        for (b, y) in h.terms() {
            if !a.is_zero() && !b.is_zero() {
                terms.push((a * b, x.clone() * y.clone()));
            }
        }
    }
    let (a0, b0) = (f.coeff(&zero), h.coeff(&zero));
    let sa = f.trace() - a0.clone();
    let sb = h.trace() - b0.clone();
    terms.push((zero, a0.clone() * sb + b0.clone() * sa + a0 * b0));
    AlgebraElement::from_terms(k, terms).expect("same field")
}

fn algebra_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    let fields = [NumberField::rationals(), NumberField::quadratic(2)?];
    let shape = IndexShape::default();
    let mut oracle = CheckReport::new("algebra.dirichlet_oracle");
    let mut tmul = CheckReport::new("algebra.trace_multiplicative");
    let mut ideal = CheckReport::new("algebra.trace_ideal");
    let mut proj = CheckReport::new("algebra.projective_products");
    for i in 0..cfg.samples {
        let k = &fields[i % 2];
        let f = random_exact(k, rng, 8, shape);
        let h = random_exact(k, rng, 8, shape);
        let d = f.dirichlet_product(&h)?;
        let o = dirichlet_oracle(&f, &h);
        oracle.record(d == o, || fail(vec![f.to_string(), h.to_string()], &d, &o));
        let c = f.cauchy_product(&h)?;
        let t = f.trace() * h.trace();
        tmul.record(c.trace() == t && d.trace() == t, || {
            fail(vec![f.to_string(), h.to_string()], format!("{} {}", c.trace(), d.trace()), &t)
        });
        let f0 = f.checked_sub(&AlgebraElement::monomial(&nlfield::FieldElement::zero(k), f.trace()))?;
        ideal.record(f0.is_in_ideal() && f0.dirichlet_product(&h)?.is_in_ideal() && f0.cauchy_product(&h)?.is_in_ideal(), || {
            fail(vec![f0.to_string(), h.to_string()], "outside the ideal", "inside")
        });
        if !f.trace().is_zero() && !h.trace().is_zero() {
            let lam: GaussianRational = Complex::new(int(3), int(2));
            let lhs = f.scale(&lam).dirichlet_product(&h)?;
            proj.record(lhs.projective_eq(&d), || fail(vec![f.to_string(), h.to_string()], &lhs, &d));
        }
    }
    let q = NumberField::rationals();
    let e = &cfg.fixtures.erratum;
    let parse = |s: &str| parse_algebra(s, &q).map_err(|e| nlfield::Error::Parse(e.to_string()));
    let (f, h) = (parse(&e.f)?, parse(&e.g)?);
    let c0 = f.dirichlet_product(&h)?.constant_term();
    let alt = f.trace() * h.trace() - f.constant_term() * h.constant_term();
    let want_rule: i64 = e.constant_rule.parse().map_err(|_| nlfield::Error::Parse("constant_rule".into()))?;
    let want_alt: i64 = e.constant_alternative.parse().map_err(|_| nlfield::Error::Parse("constant_alternative".into()))?;
    let erratum = single(
        "algebra.erratum_constant_term",
        c0 == g(want_rule) && alt == g(want_alt) && c0 != alt,
        format!("rule {c0}, alternative {alt}"),
        format!("rule {want_rule}, alternative {want_alt}"),
    );
    let [a, b, c] = nlfield::signs::non_distributivity_witness();
    let lhs = a.cauchy_product(&b)?.dirichlet_product(&c)?;
    let rhs = a.dirichlet_product(&c)?.cauchy_product(&b.dirichlet_product(&c)?)?;
    let nondist = single("algebra.non_distributivity_witness", lhs != rhs, &lhs, &rhs);
    Ok(vec![oracle, tmul, ideal, proj, erratum, nondist])
}

fn random_in_sign(rng: &mut ChaCha8Rng, s: ComplexSign) -> Complex<f64> {
    let r = rng.gen_range(0.1..10.0);
    let theta = match s.kind() {
        nlfield::SignKind::Singular => 0.0,
        nlfield::SignKind::Quadrant => rng.gen_range(1e-6..std::f64::consts::FRAC_PI_2 - 1e-6),
    } + std::f64::consts::FRAC_PI_2 * s.quarter() as f64;
    let z = Complex::from_polar(r, theta);
    // snap axis points exactly onto the axis
    match (s.kind(), s.quarter()) {
        (nlfield::SignKind::Singular, 0) => Complex::new(r, 0.0),
        (nlfield::SignKind::Singular, 1) => Complex::new(0.0, r),
        (nlfield::SignKind::Singular, 2) => Complex::new(-r, 0.0),
        (nlfield::SignKind::Singular, _) => Complex::new(0.0, -r),
        _ => z,
    }
}

fn signs_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    let shape = IndexShape { height: 6, max_den: 2 };
    let mut law = CheckReport::new("signs.graded_dirichlet_law");
    for (i, k) in [NumberField::quadratic(2)?, NumberField::quadratic(-1)?].iter().enumerate() {
        for _ in 0..cfg.samples / 2 + i % 2 {
            let f = random_exact(k, rng, 5, shape);
            let h = random_exact(k, rng, 5, shape);
            let r = check_graded_dirichlet_law(&f, &h)?;
            law.record(r.pass, || {
                fail(vec![f.to_string(), h.to_string()], serde_json::to_string(&r).unwrap_or_default(), "pass")
            });
        }
    }
    let mut table = CheckReport::new("signs.product_table_sampling");
    for s1 in ComplexSign::all() {
        for s2 in ComplexSign::all() {
            let predicted = s1.mul(s2);
            let mut seen = BTreeSet::new();
            for _ in 0..cfg.samples.max(1) {
                let p = random_in_sign(rng, s1) * random_in_sign(rng, s2);
                if let Some(s) = ComplexSign::of_f64(p.re, p.im) {
                    seen.insert(s);
                }
            }
            let singleton = predicted.len() == 1;
            let ok = seen.is_subset(&predicted) && (!singleton || seen == predicted);
            table.record(ok, || {
                fail(
                    vec![s1.to_string(), s2.to_string()],
                    format!("{seen:?}"),
                    format!("{predicted:?}"),
                )
            });
        }
    }
    let k2 = NumberField::quadratic(2)?;
    let x = &nlfield::FieldElement::from_i64(&k2, 1) + &k2.generator();
    let v = sign_of(&x)?.to_strings();
    let sqrt2 = single("signs.sqrt2_example", v == cfg.fixtures.sqrt2_sign, format!("{v:?}"), format!("{:?}", cfg.fixtures.sqrt2_sign));
    let l = NumberField::new(Polynomial::from_i64(&[108, 0, 0, 0, 0, 0, 1]))?;
    let cube = l.generator().pow(4)?.scale(&nlfield::rational::rat(1, 18));
    let mut got = sign_of(&cube)?.to_strings();
    let mut want = cfg.fixtures.cube_root_signs.clone();
    got.sort();
    want.sort();
    let cube_check = single("signs.cube_root_example", got == want, format!("{got:?}"), format!("{want:?}"));
    let qi = NumberField::quadratic(-1)?;
    let mut realized = BTreeSet::new();
    for a in -1..=1i64 {
        for b in -1..=1i64 {
            if a != 0 || b != 0 {
                let z = nlfield::FieldElement::from_i64_coords(&qi, &[a, b])?;
                realized.insert(sign_of(&z)?.complex[0]);
            }
        }
    }
    let all8 = single("signs.gaussian_realizes_all", realized.len() == 8, realized.len(), 8);
    Ok(vec![law, table, sqrt2, cube_check, all8])
}

fn hardy_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    let q = NumberField::rationals();
    let one = GaussianRational::one();
    let f = AlgebraElement::from_integer_terms(&q, &[(1, one.clone())]);
    let p = HyperPoint::new(vec![Complex::new(0.0, 1.0)], vec![])?;
    let v = eval_hyper::<f64, _>(&f, &p)?;
    let want = cfg.fixtures.hardy_decay;
    let decay = single("hardy.decay_at_i", (v.value - Complex::new(want, 0.0)).norm() <= 1e-12, v.value, want);

    let mut ortho = CheckReport::new("hardy.character_orthonormality");
    for (k, grid) in [(q.clone(), vec![64]), (NumberField::quadratic(2)?, vec![32, 32])] {
        for _ in 0..(cfg.samples / 10).max(4) {
            let a = random_dual_index(&k, rng, 5);
            let b = if rng.gen_bool(0.3) { a.clone() } else { random_dual_index(&k, rng, 5) };
            let fa = AlgebraElement::monomial(&a, one.clone());
            let fb = AlgebraElement::monomial(&b, one.clone());
            let (r, _) = torus_inner_product(&fa, &fb, &grid)?;
            let want = if a == b { 1.0 } else { 0.0 };
            ortho.record((r.value - Complex::new(want, 0.0)).norm() <= 1e-9, || {
                fail(vec![a.to_string(), b.to_string()], r.value, want)
            });
        }
    }
    let mut member = CheckReport::new("hardy.membership");
    for _ in 0..(cfg.samples / 10).max(4) {
        let h = nlfield::sample::random_positive_rational_series(rng, 5, 20);
        let ok = nlfield::hardy::hardy_membership(&h)?;
        let neg = h.map_indices(|a| -a);
        let bad = nlfield::hardy::hardy_membership(&neg)?;
        member.record(ok && !bad, || fail(vec![h.to_string()], bad, ok));
    }
    Ok(vec![decay, ortho, member])
}

fn galois_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    let fx = &cfg.fixtures;
    let cases: [(&str, Arc<NumberField>, GroupFamily); 4] = [
        ("sqrt2", NumberField::quadratic(2)?, GroupFamily::Quadratic),
        ("gaussian", NumberField::quadratic(-1)?, GroupFamily::Quadratic),
        ("zeta5", NumberField::cyclotomic(5)?, GroupFamily::Cyclotomic(5)),
        ("zeta8", NumberField::cyclotomic(8)?, GroupFamily::Cyclotomic(8)),
    ];
    let mut groups = CheckReport::new("galois.group_tables");
    let mut out = Vec::new();
    let shape = IndexShape { height: 8, max_den: 2 };
    let per = (cfg.samples / 4).max(2);
    for (name, k, fam) in &cases {
        let grp = GaloisGroup::from_family(k, fam)?;
        let want = (fx.group_orders.get(*name).copied(), fx.group_exponents.get(*name).copied());
        let got = (Some(grp.order()), Some(grp.exponent()));
        groups.record(grp.verify_table().is_ok() && got == want, || {
            fail(vec![name.to_string()], format!("{got:?}"), format!("{want:?}"))
        });
        for s in grp.elements().iter().skip(1) {
            let rep = verify_nonlinear_automorphism(s, per, shape, rng)?;
            for mut c in rep.checks {
                c.check = format!("{}[{name}: {}]", c.check, rep.automorphism);
                out.push(c);
            }
        }
    }
    out.insert(0, groups);

    let collapse = cyclotomic_trace_collapse(5)?;
    let gens: Vec<String> = collapse.rows.iter().map(|r| r.image_generator.clone()).collect();
    out.push(single("galois.trace_collapse", collapse.pass && gens == fx.trace_image, format!("{gens:?}"), format!("{:?}", fx.trace_image)));

    let z5 = NumberField::cyclotomic(5)?;
    let grp = GaloisGroup::from_family(&z5, &GroupFamily::Cyclotomic(5))?;
    let t = relative_trace(&z5.generator(), grp.elements())?;
    let want = nlfield::rational::parse_rational(&fx.zeta5_trace)?;
    out.push(single("galois.zeta5_trace", t.as_rational() == Some(want.clone()), &t, nlfield::rational::format_rational(&want)));

    let l = NumberField::cyclotomic(8)?;
    let z = l.generator();
    let tower = TowerEmbedding::new(&NumberField::quadratic(2)?, &(&z + &z.pow(-1)?))?;
    let moved = fixed_field_check(&Automorphism::new(&z.pow(3)?)?, &tower, per, rng)?;
    let fixed = fixed_field_check(&Automorphism::new(&z.pow(7)?)?, &tower, per, rng)?;
    out.push(single(
        "galois.tower_fixed_field",
        !moved.generator_fixed && !moved.monomials.pass() && fixed.pass(),
        format!("z->z^3 fixes: {}, z->z^7 fixes: {}", moved.generator_fixed, fixed.generator_fixed),
        "z->z^3 fixes: false, z->z^7 fixes: true",
    ));
    Ok(out)
}

fn flows_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut out = Vec::new();
    for k in [NumberField::rationals(), NumberField::quadratic(2)?, NumberField::quadratic(-1)?] {
        let tag = k.minpoly().to_string();
        for mut c in verify_flows(&k, (cfg.samples / 2).max(1), IndexShape::default(), 1e-12, rng)? {
            c.check = format!("{}[{tag}]", c.check);
            out.push(c);
        }
    }
    Ok(out)
}

fn dirichlet_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteResult {
    type S = IntegerSeries<GaussianRational>;
    let n = cfg.n.max(12);
    let fx = &cfg.fixtures;
    let ones = S::ones(n);
    let mu = ones.dinvert()?;
    let prefix: Vec<GaussianRational> = fx.mobius.iter().map(|&v| g(v)).collect();
    let mobius = single(
        "dirichlet.mobius_fixture",
        mu.coeffs()[..prefix.len().min(n)] == prefix[..prefix.len().min(n)],
        format!("{:?}", &mu.coeffs()[..prefix.len().min(n)]),
        format!("{:?}", fx.mobius),
    );
    let delta = ones.dconv(&mu)?;
    let inverse = single("dirichlet.inverse_identity", delta == S::delta(n), "dconv(1, mu)", "delta_1");
    let tau = ones.dconv(&ones)?;
    let want: Vec<GaussianRational> = fx.divisor_count.iter().map(|&v| g(v)).collect();
    let count = single(
        "dirichlet.divisor_count_fixture",
        tau.coeffs()[..want.len()] == want[..],
        format!("{:?}", &tau.coeffs()[..want.len()]),
        format!("{:?}", fx.divisor_count),
    );

    let mut bridge = CheckReport::new("dirichlet.mellin_bridge");
    let mut agree = CheckReport::new("dirichlet.algebra_agreement");
    let m = 200usize;
    for _ in 0..cfg.samples.max(1) {
        let mut a = IntegerSeries::<Complex<f64>>::zeros(m);
        let mut b = IntegerSeries::<Complex<f64>>::zeros(m);
        for k in 1..=14 {
            a.set(k, Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            b.set(k, Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        let c = a.dconv(&b)?;
        let y = rng.gen_range(-5.0..5.0);
        let lhs = c.mellin_eval(y);
        let rhs = a.mellin_eval(y) * b.mellin_eval(y);
        let d = (lhs - rhs).norm();
        bridge.record(d < 1e-9, || Failure { inputs: vec![format!("y={y}")], lhs: lhs.to_string(), rhs: rhs.to_string(), delta: d });

        let mut ea = S::zeros(40);
        let mut eb = S::zeros(40);
        for k in 1..=6 {
            ea.set(k, g(rng.gen_range(-3..=3)));
            eb.set(k, g(rng.gen_range(-3..=3)));
        }
        let via_series = ea.dconv(&eb)?;
        let via_alg = S::from_algebra(&ea.to_algebra().dirichlet_product(&eb.to_algebra())?, 40)?;
        agree.record(via_series == via_alg, || fail(vec![], format!("{:?}", via_series.coeffs()), format!("{:?}", via_alg.coeffs())));
    }

    let sieve = Sieve::new(n);
    let mut mult = CheckReport::new("dirichlet.inverse_multiplicative");
    for _ in 0..cfg.samples.max(1) {
        let p = rng.gen_range(2..=n / 2);
        let q = rng.gen_range(2..=n / p);
        if num_integer_gcd(p, q) != 1 {
            continue;
        }
        let ok = mu.get(p * q) == mu.get(p) * mu.get(q);
        mult.record(ok, || fail(vec![format!("{p} {q}")], mu.get(p * q), mu.get(p) * mu.get(q)));
    }
    let divisor_check = single("dirichlet.sieve_divisors", sieve.divisors(12) == vec![1, 2, 3, 4, 6, 12], format!("{:?}", sieve.divisors(12)), "[1, 2, 3, 4, 6, 12]");
    Ok(vec![mobius, inverse, count, bridge, agree, mult, divisor_check])
}

fn num_integer_gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
