use std::sync::Arc;

use nlfield::dirichlet::Sieve;
use nlfield::galois::{GaloisGroup, GroupFamily};
use nlfield::rational::rat;
use nlfield::signs::sign_of;
use nlfield::{
    AlgebraElement, AlgebraElement32, Coefficient, ComplexSign, ExactAlgebraElement, FieldElement,
    GaussianRational, IntegerSeries, NumberField,
};
use num_complex::Complex;
use proptest::prelude::*;

fn sqrt2() -> Arc<NumberField> {
    NumberField::quadratic(2).unwrap()
}

fn zeta5() -> Arc<NumberField> {
    NumberField::cyclotomic(5).unwrap()
}

fn element(k: &Arc<NumberField>, coords: &[i64], den: i64) -> FieldElement {
    FieldElement::new(k, coords.iter().map(|&c| rat(c, den)).collect()).unwrap()
}

fn arb_element(k: Arc<NumberField>, h: i64) -> impl Strategy<Value = FieldElement> {
    let d = k.degree();
    (prop::collection::vec(-h..=h, d), 1i64..=3).prop_map(move |(c, den)| element(&k, &c, den))
}

fn arb_algebra(k: Arc<NumberField>, terms: usize) -> impl Strategy<Value = ExactAlgebraElement> {
    let kk = k.clone();
    prop::collection::vec((arb_element(k, 20), -5i64..=5, -5i64..=5), 0..=terms).prop_map(
        move |ts| {
            AlgebraElement::from_terms(
                &kk,
                ts.into_iter()
                    .map(|(a, re, im)| (a, Complex::new(rat(re, 1), rat(im, 1)))),
            )
            .unwrap()
        },
    )
}

fn max_gap<C: Coefficient>(a: &AlgebraElement<C>, b: &AlgebraElement<C>) -> f64 {
    a.support()
        .chain(b.support())
        .map(|i| (a.coeff(i).to_c64() - b.coeff(i).to_c64()).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cauchy_is_a_commutative_monoid(
        f in arb_algebra(sqrt2(), 6),
        g in arb_algebra(sqrt2(), 6),
        h in arb_algebra(sqrt2(), 4),
    ) {
        let k = f.field().clone();
        prop_assert_eq!(f.cauchy_product(&g).unwrap(), g.cauchy_product(&f).unwrap());
        prop_assert_eq!(
            f.cauchy_product(&g).unwrap().cauchy_product(&h).unwrap(),
            f.cauchy_product(&g.cauchy_product(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.cauchy_product(&AlgebraElement::cauchy_identity(&k)).unwrap(), f.clone());
        let sum = g.checked_add(&h).unwrap();
        prop_assert_eq!(
            f.cauchy_product(&sum).unwrap(),
            f.cauchy_product(&g).unwrap().checked_add(&f.cauchy_product(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn dirichlet_is_a_commutative_monoid(
        f in arb_algebra(sqrt2(), 6),
        g in arb_algebra(sqrt2(), 6),
        h in arb_algebra(sqrt2(), 4),
    ) {
        let k = f.field().clone();
        prop_assert_eq!(f.dirichlet_product(&g).unwrap(), g.dirichlet_product(&f).unwrap());
        prop_assert_eq!(
            f.dirichlet_product(&g).unwrap().dirichlet_product(&h).unwrap(),
            f.dirichlet_product(&g.dirichlet_product(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.dirichlet_product(&AlgebraElement::dirichlet_identity(&k)).unwrap(), f.clone());
        let sum = g.checked_add(&h).unwrap();
        prop_assert_eq!(
            f.dirichlet_product(&sum).unwrap(),
            f.dirichlet_product(&g).unwrap().checked_add(&f.dirichlet_product(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn trace_is_multiplicative(f in arb_algebra(zeta5(), 6), g in arb_algebra(zeta5(), 6)) {
        let t = f.trace() * g.trace();
        prop_assert_eq!(f.cauchy_product(&g).unwrap().trace(), t.clone());
        prop_assert_eq!(f.dirichlet_product(&g).unwrap().trace(), t);
    }

    #[test]
    fn approximate_products_track_exact_ones(f in arb_algebra(sqrt2(), 6), g in arb_algebra(sqrt2(), 6)) {
        let exact = f.dirichlet_product(&g).unwrap().to_approx::<f64>();
        let approx = f.to_approx::<f64>().dirichlet_product(&g.to_approx::<f64>()).unwrap();
        prop_assert!(max_gap(&exact, &approx) < 1e-12);
        let exact32: AlgebraElement32 = f.cauchy_product(&g).unwrap().to_approx::<f32>();
        let approx32 = f.to_approx::<f32>().cauchy_product(&g.to_approx::<f32>()).unwrap();
        prop_assert!(max_gap(&exact32, &approx32) < 1e-3);
    }

    #[test]
    fn galois_action_is_a_homomorphism(
        f in arb_algebra(zeta5(), 5),
        g in arb_algebra(zeta5(), 5),
        which in 0usize..4,
        other in 0usize..4,
    ) {
        let k = zeta5();
        let group = GaloisGroup::from_family(&k, &GroupFamily::Cyclotomic(5)).unwrap();
        let s = &group.elements()[which];
        let t = &group.elements()[other];
        let act = |x: &ExactAlgebraElement| s.apply_to_algebra(x).unwrap();
        prop_assert_eq!(act(&f.cauchy_product(&g).unwrap()), act(&f).cauchy_product(&act(&g)).unwrap());
        prop_assert_eq!(act(&f.dirichlet_product(&g).unwrap()), act(&f).dirichlet_product(&act(&g)).unwrap());
        prop_assert_eq!(act(&f).trace(), f.trace());
        let st = s.compose(t).unwrap();
        prop_assert_eq!(st.apply_to_algebra(&f).unwrap(), act(&t.apply_to_algebra(&f).unwrap()));
        prop_assert_eq!(s.inverse().apply_to_algebra(&act(&f)).unwrap(), f);
    }

    #[test]
    fn signs_multiply_within_product_sets(
        x in arb_element(NumberField::quadratic(-1).unwrap(), 9),
        y in arb_element(NumberField::quadratic(-1).unwrap(), 9),
    ) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (sx, sy) = (sign_of(&x).unwrap(), sign_of(&y).unwrap());
        let sxy = sign_of(&(&x * &y)).unwrap();
        prop_assert!(sx.product_set(&sy).contains(&sxy));
    }

    #[test]
    fn sign_of_conjugate_is_conjugate_sign(re in -5i32..=5, im in -5i32..=5) {
        prop_assume!(re != 0 || im != 0);
        let s = ComplexSign::of_f64(re as f64, im as f64).unwrap();
        prop_assert_eq!(ComplexSign::of_f64(re as f64, -im as f64).unwrap(), s.conj());
        prop_assert_eq!(s.conj().conj(), s);
    }

    #[test]
    fn pointwise_dirichlet_identity(
        a in prop::collection::vec(-4i64..=4, 60),
        b in prop::collection::vec(-4i64..=4, 60),
        n in 1usize..=60,
    ) {
        let series = |v: &[i64]| IntegerSeries::from_coeffs(
            v.iter().map(|&x| Complex::new(rat(x, 1), rat(0, 1))).collect::<Vec<GaussianRational>>(),
        );
        let (fa, fb) = (series(&a), series(&b));
        let c = fa.dconv(&fb).unwrap();
        let brute: i64 = (1..=n).filter(|d| n % d == 0).map(|d| a[d - 1] * b[n / d - 1]).sum();
        prop_assert_eq!(c.get(n), Complex::new(rat(brute, 1), rat(0, 1)));
        prop_assert_eq!(fa.dconv_at(&fb, &Sieve::new(60), n), c.get(n));
    }

    #[test]
    fn multiplicative_functions_stay_multiplicative(
        prime_powers in prop::collection::vec(-3i64..=3, 40),
        other in prop::collection::vec(-3i64..=3, 40),
    ) {
        let n = 300;
        let sieve = Sieve::new(n);
        let build = |vals: &[i64]| {
            let mut s = IntegerSeries::<GaussianRational>::zeros(n);
            for m in 1..=n {
                let v: i64 = sieve
                    .factor(m)
                    .iter()
                    .map(|&(p, e)| vals[(p * 7 + e as usize) % vals.len()])
                    .product();
                s.set(m, Complex::new(rat(v, 1), rat(0, 1)));
            }
            s
        };
        let (f, g) = (build(&prime_powers), build(&other));
        let h = f.dconv(&g).unwrap();
        let inv = f.dinvert().unwrap();
        for m in 1..=n {
            for k in 1..=n / m {
                if num_integer::gcd(m, k) == 1 {
                    prop_assert_eq!(h.get(m * k), h.get(m) * h.get(k));
                    prop_assert_eq!(inv.get(m * k), inv.get(m) * inv.get(k));
                }
            }
        }
    }
}
