#![allow(clippy::excessive_precision)]

use bohr_core::problems::{NonnegPolynomial, OperatorFlavor, ProblemId, ProblemSpec};
use bohr_core::solver::certify_monotone;
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = NonnegPolynomial> {
    prop::collection::vec(0.0..20.0f64, 1..=3)
        .prop_filter_map("nonzero", |c| NonnegPolynomial::new(c).ok())
}

fn spec_strategy() -> impl Strategy<Value = ProblemSpec> {
    let order = || 1u32..=5;
    let lambda = (0u32..=10).prop_map(|k| k as f64 / 10.0);
    prop_oneof![
        (order(), order()).prop_map(|(m, p)| ProblemSpec::t31(m, p).unwrap()),
        (order(), order()).prop_map(|(m, p)| ProblemSpec::t32(m, p).unwrap()),
        (order(), order(), order(), order())
            .prop_map(|(s, m, p, q)| ProblemSpec::t33(s, m, p, q).unwrap()),
        (order(), order(), order(), order())
            .prop_map(|(s, m, p, q)| ProblemSpec::t34(s, m, p, q).unwrap()),
        (order(), lambda.clone()).prop_map(|(m, l)| ProblemSpec::t41(m, l).unwrap()),
        (order(), lambda).prop_map(|(m, l)| ProblemSpec::t42(m, l).unwrap()),
        (order(), order(), 2u32..=5).prop_map(|(m, p, n)| ProblemSpec::t43(m, p, n).unwrap()),
        (order(), order(), 2u32..=5).prop_map(|(m, p, n)| ProblemSpec::t44(m, p, n).unwrap()),
        (order(), poly_strategy()).prop_map(|(m, poly)| ProblemSpec::t51(m, poly).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gap_starts_at_minus_target(spec in spec_strategy()) {
        prop_assert_eq!(spec.evaluate_g(0.0).unwrap(), -spec.target());
    }

    #[test]
    fn gap_is_strictly_increasing(spec in spec_strategy()) {
        prop_assert!(certify_monotone(&spec, 1000), "{}", spec);
    }

    #[test]
    fn extremal_attains_class_bound(spec in spec_strategy(), r in 0.0..0.9f64) {
        prop_assume!(!spec.sharpness_is_advisory());
        let (class, extremal) = spec.lhs_pair(r).unwrap();
        prop_assert!((class - extremal).abs() <= 1e-12 * class.max(1.0), "{} at {}: {} vs {}", spec, r, class, extremal);
    }

    #[test]
    fn flavor_does_not_change_the_gap(spec in spec_strategy(), r in 0.0..0.99f64) {
        let d = spec.clone().with_flavor(OperatorFlavor::D);
        let ds = spec.with_flavor(OperatorFlavor::Dscript);
        prop_assert_eq!(d.evaluate_g(r).unwrap(), ds.evaluate_g(r).unwrap());
    }

    #[test]
    fn gap_is_class_bound_minus_target(spec in spec_strategy(), r in 0.0..0.99f64) {
        prop_assert_eq!(spec.evaluate_g(r).unwrap(), spec.lhs_class_bound(r).unwrap() - spec.target());
    }

    #[test]
    fn params_round_trip(spec in spec_strategy()) {
        let again = ProblemSpec::from_params(spec.id(), &spec.params()).unwrap();
        prop_assert_eq!(again, spec);
    }

    #[test]
    fn linear_mixtures_without_derivative_reduce(m in 1u32..=8, r in 0.0..0.99f64) {
        let x = r.powi(m as i32);
        let t41 = ProblemSpec::t41(m, 0.0).unwrap().evaluate_g(r).unwrap();
        let t42 = ProblemSpec::t42(m, 0.0).unwrap().evaluate_g(r).unwrap();
        prop_assert!((t41 - (x / (1.0 - x) - 0.25)).abs() <= 1e-12 * (1.0 + x / (1.0 - x)));
        prop_assert!((t42 - (x / (1.0 - x) - 0.5)).abs() <= 1e-12 * (1.0 + x / (1.0 - x)));
    }
}

#[test]
fn expanded_closed_forms_at_sample_points() {
    // Each left-hand side expanded by hand, in plain f64.
    let r: f64 = 0.21;
    let (rm, rp) = (r * r, r);
    let t31 = ProblemSpec::t31(2, 1).unwrap().evaluate_g(r).unwrap();
    let by_hand = rm
        + rp
        + rm * rm * (4.0 - 3.0 * rm + rm * rm) / (1.0 - rm).powi(3)
        + (2.0 * rp * rp - rp.powi(3)) / (1.0 - rp).powi(2)
        - 0.25;
    assert!((t31 - by_hand).abs() < 1e-15);

    let t33 = ProblemSpec::t33(2, 1, 3, 2).unwrap().evaluate_g(r).unwrap();
    let rq = r * r;
    let by_hand =
        r.powi(2) * (1.0 + r).powi(2) / (1.0 - r).powi(6) + (rq / (1.0 - rq).powi(2)).powi(3) - 1.0;
    assert!((t33 - by_hand).abs() < 1e-15);

    let t43 = ProblemSpec::t43(1, 2, 3).unwrap().evaluate_g(r).unwrap();
    let rp = r * r;
    let by_hand = r * (1.0 + 4.0 * r + r * r) / (1.0 - r).powi(4)
        + rp.powi(3) * (3.0 + rp - 3.0 * rp) / (1.0 - rp).powi(2)
        - 0.25;
    assert!((t43 - by_hand).abs() < 1e-15);
}

#[test]
fn table_point_residuals_are_small() {
    let spec = ProblemSpec::t31(1, 1).unwrap();
    assert!(spec.evaluate_g(0.093200).unwrap().abs() <= 1e-4);
    // Slope ≈ 8 here, so a radius rounded to ±1e−4 moves the left side by
    // up to ~1e−3.
    let spec = ProblemSpec::t34(2, 1, 1, 1).unwrap();
    let lhs = spec.lhs_class_bound(0.326200).unwrap();
    assert!((lhs - 1.0).abs() <= 1e-3);
    assert!((lhs - 1.000350686).abs() < 1e-9);
}

#[test]
fn area_term_oracle() {
    // Σ_{n≥1} n r^n + Σ n⁵ r^{2n} − 1/4 at r = 0.05, high-precision sum.
    let spec = ProblemSpec::t51(1, NonnegPolynomial::identity()).unwrap();
    assert!((spec.evaluate_g(0.05).unwrap() - (-0.1918945007680539732778175)).abs() < 1e-16);
}

#[test]
fn every_problem_rejects_the_far_end() {
    for id in ProblemId::ALL {
        let names = id.parameter_names();
        let pairs: Vec<(&str, &str)> = names
            .iter()
            .map(|&n| {
                (
                    n,
                    if n == "lambda" {
                        "0.5"
                    } else if n == "poly" {
                        "1"
                    } else {
                        "2"
                    },
                )
            })
            .collect();
        let spec = ProblemSpec::from_params(id, &pairs).unwrap();
        assert!(spec.evaluate_g(1.0).is_err());
        assert!(spec.evaluate_g(-0.1).is_err());
    }
}
