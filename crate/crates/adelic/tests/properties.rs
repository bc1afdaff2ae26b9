//! Property tests for the exact-arithmetic invariants and the transform
//! algebra.

use num_complex::Complex64;
use proptest::prelude::*;

use adelic::local_zeta::{arch_gamma_ratio, finite_gamma_ratio};
use adelic::places::IdelePoint;
use adelic::rational::{Rational, Valuation};
use adelic::schwartz::{ArchFunction, StepTerm, TwistedStepFunction};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational_strategy().prop_filter("nonzero", |q| !q.is_zero())
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

fn vf(v: Valuation) -> i64 {
    v.finite().expect("finite valuation")
}

proptest! {
    #[test]
    fn valuation_is_multiplicative(x in nonzero_rational(), y in nonzero_rational(), p in small_prime()) {
        let lhs = (&x * &y).valuation(p).unwrap();
        prop_assert_eq!(vf(lhs), vf(x.valuation(p).unwrap()) + vf(y.valuation(p).unwrap()));
    }

    #[test]
    fn valuation_is_ultrametric(x in rational_strategy(), y in rational_strategy(), p in small_prime()) {
        let sum = (&x + &y).valuation(p).unwrap();
        let bound = x.valuation(p).unwrap().min(y.valuation(p).unwrap());
        match bound {
            Valuation::Infinite => prop_assert!(sum.is_infinite()),
            Valuation::Finite(b) => prop_assert!(sum.at_least(b)),
        }
    }

    #[test]
    fn frac_p_defect_is_integral(x in rational_strategy(), p in small_prime()) {
        let r = x.frac_p(p).unwrap();
        prop_assert!(r >= Rational::zero() && r < Rational::one());
        prop_assert!((&x - &r).valuation(p).unwrap().at_least(0));
        prop_assert_eq!(r.frac_p(p).unwrap(), r.clone());
        // the denominator of the fractional part is a pure p-power
        let mut d = r.denom().clone();
        let p_big = num_bigint::BigInt::from(p);
        while num_traits::Zero::is_zero(&(&d % &p_big)) {
            d /= &p_big;
        }
        prop_assert!(num_traits::One::is_one(&d));
    }

    #[test]
    fn artin_product_formula(q in nonzero_rational()) {
        let norm = IdelePoint::diagonal(&q).unwrap().norm();
        prop_assert_eq!(norm.exact().expect("diagonal is exact"), &Rational::one());
    }

    #[test]
    fn idele_norm_is_multiplicative(a in nonzero_rational(), b in nonzero_rational()) {
        let x = IdelePoint::diagonal(&a).unwrap();
        let y = IdelePoint::new(
            adelic::places::RealPoint::Exact(b.clone()),
            [(101u64, b.clone())].into_iter().collect(),
        ).unwrap();
        let lhs = x.mul(&y).norm();
        let rhs = x.norm().exact().unwrap() * y.norm().exact().unwrap();
        prop_assert_eq!(lhs.exact().unwrap(), &rhs);
    }
}

fn step_terms_strategy(p: u64) -> impl Strategy<Value = Vec<StepTerm>> {
    let pi = p as i64;
    let term = (
        (-10i64..=10, -10i64..=10),
        -(2 * pi)..=2 * pi,
        -(2 * pi)..=2 * pi,
        -2i64..=2,
    )
        .prop_map(move |((cr, ci), b, a, n)| StepTerm {
            coeff: Complex64::new(cr as f64 / 4.0, ci as f64 / 4.0),
            twist: Rational::ratio(b, pi),
            center: Rational::ratio(a, pi),
            level: n,
        });
    prop::collection::vec(term, 1..=3)
}

/// Exact integral of |f|^2 by refining the support to a level where both
/// the indicators and every cross-term twist are constant.
fn abs_squared_integral(f: &TwistedStepFunction) -> f64 {
    let p = f.prime();
    let mut level = 0i64;
    let mut floor = 0i64;
    for (i, t) in f.terms().iter().enumerate() {
        level = level.max(t.level);
        floor = floor.min(t.level);
        if let Valuation::Finite(v) = t.center.valuation(p).unwrap() {
            floor = floor.min(v);
        }
        for u in &f.terms()[i + 1..] {
            if let Valuation::Finite(v) = (&t.twist - &u.twist).valuation(p).unwrap() {
                level = level.max(-v);
            }
        }
        if let Valuation::Finite(v) = t.twist.valuation(p).unwrap() {
            level = level.max(-v);
        }
    }
    let cells = p.pow(u32::try_from(level - floor).expect("fits"));
    let base = Rational::from_integer(p).pow(i32::try_from(floor).expect("fits"));
    let mut acc = 0.0f64;
    for k in 0..cells {
        let x = &base * &Rational::from_integer(k);
        acc += f.eval(&x).norm_sqr();
    }
    acc * (p as f64).powi(-i32::try_from(level).expect("fits"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_involution(terms in step_terms_strategy(3), k in -20i64..=20) {
        let f = TwistedStepFunction::new(3, terms).unwrap();
        let ff = f.fourier_transform().fourier_transform();
        let x = Rational::ratio(k, 9);
        let defect = (ff.eval(&x) - f.eval(&(-&x))).norm();
        prop_assert!(defect < 1e-13, "defect {}", defect);
    }

    #[test]
    fn transform_is_linear(terms_f in step_terms_strategy(2), terms_g in step_terms_strategy(2)) {
        let f = TwistedStepFunction::new(2, terms_f).unwrap();
        let g = TwistedStepFunction::new(2, terms_g).unwrap();
        let alpha = Complex64::new(0.75, -0.5);
        let beta = Complex64::new(-1.25, 0.25);
        let lhs = f.scaled(alpha).add(&g.scaled(beta)).unwrap().fourier_transform();
        let rhs = f.fourier_transform().scaled(alpha).add(&g.fourier_transform().scaled(beta)).unwrap();
        // the term algebra is linear term by term; only the order of the
        // coefficient products differs, so agreement is at the ulp scale
        for k in -8i64..=8 {
            let x = Rational::ratio(k, 4);
            let (a, b) = (lhs.eval(&x), rhs.eval(&x));
            prop_assert!((a - b).norm() <= 1e-14 * (1.0 + a.norm()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn plancherel_for_step_functions(terms in step_terms_strategy(2)) {
        let f = TwistedStepFunction::new(2, terms).unwrap();
        let lhs = abs_squared_integral(&f);
        let rhs = abs_squared_integral(&f.fourier_transform());
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()), "{} vs {}", lhs, rhs);
    }
}

#[test]
fn gamma_ratio_is_function_independent() {
    let one = Complex64::new(1.0, 0.0);
    let samples = [
        Complex64::new(2.0, 0.0),
        Complex64::new(0.4, 1.0),
        Complex64::new(1.5, -2.0),
        Complex64::new(0.8, 0.3),
        Complex64::new(2.6, 4.0),
    ];
    let functions = [
        TwistedStepFunction::integers_indicator(3),
        TwistedStepFunction::coset_indicator(3, Rational::zero(), 1).unwrap(),
        TwistedStepFunction::coset_indicator(3, Rational::one(), 1).unwrap(),
    ];
    for &s in &samples {
        let ratios: Vec<Complex64> = functions
            .iter()
            .map(|f| finite_gamma_ratio(f, one, s).unwrap())
            .collect();
        for r in &ratios[1..] {
            assert!(
                (r - ratios[0]).norm() < 1e-10 * (1.0 + ratios[0].norm()),
                "s = {s}: {ratios:?}"
            );
        }
    }

    for &s in &samples {
        let ratios: Vec<Complex64> = [1.0, 2.0, 0.5]
            .iter()
            .map(|&scale| {
                arch_gamma_ratio(&ArchFunction::gaussian(scale).unwrap(), 0, s).unwrap()
            })
            .collect();
        for r in &ratios[1..] {
            assert!(
                (r - ratios[0]).norm() < 1e-10 * (1.0 + ratios[0].norm()),
                "s = {s}: {ratios:?}"
            );
        }
    }
}
