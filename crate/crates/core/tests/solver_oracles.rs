#![allow(clippy::excessive_precision)]

use bohr_core::problems::{NonnegPolynomial, ProblemSpec};
use bohr_core::solver::{find_upper_bracket, solve, RESIDUAL_TOL};

// Roots of the gap equations, bisected to 40 digits in an independent
// multiprecision implementation.
fn oracle_cases() -> Vec<(ProblemSpec, f64)> {
    let poly = |c: Vec<f64>| NonnegPolynomial::new(c).unwrap();
    vec![
        (ProblemSpec::t31(1, 1).unwrap(), 0.093204696967192464711),
        (ProblemSpec::t31(2, 1).unwrap(), 0.15780042959372925008),
        (ProblemSpec::t31(2, 2).unwrap(), 0.30529444306634941552),
        (ProblemSpec::t31(1, 2).unwrap(), 0.13314812309687941888),
        (ProblemSpec::t32(1, 1).unwrap(), 0.18350341907227396727),
        (ProblemSpec::t32(2, 1).unwrap(), 0.28687563921295026129),
        (ProblemSpec::t32(2, 2).unwrap(), 0.42837299059613220118),
        (ProblemSpec::t32(1, 2).unwrap(), 0.24682982621045850758),
        (
            ProblemSpec::t33(2, 1, 1, 1).unwrap(),
            0.25054147740458026043,
        ),
        (
            ProblemSpec::t33(2, 2, 3, 1).unwrap(),
            0.37800356793859508172,
        ),
        (
            ProblemSpec::t33(3, 2, 5, 5).unwrap(),
            0.53364290708528734497,
        ),
        (
            ProblemSpec::t33(2, 1, 7, 2).unwrap(),
            0.28477475712275830739,
        ),
        (
            ProblemSpec::t34(2, 1, 1, 1).unwrap(),
            0.32615840378726466464,
        ),
        (
            ProblemSpec::t34(2, 2, 3, 1).unwrap(),
            0.48524821679482754096,
        ),
        (
            ProblemSpec::t34(3, 2, 5, 5).unwrap(),
            0.61803354831938436389,
        ),
        (
            ProblemSpec::t34(2, 1, 7, 2).unwrap(),
            0.38196564877190956292,
        ),
        (ProblemSpec::t41(1, 0.5).unwrap(), 0.15923878661380408774),
        (ProblemSpec::t41(3, 0.3).unwrap(), 0.55513610046711358453),
        (ProblemSpec::t42(1, 0.5).unwrap(), 0.2928932188134524756),
        (ProblemSpec::t42(2, 0.7).unwrap(), 0.53080520292113356291),
        (ProblemSpec::t43(1, 1, 2).unwrap(), 0.1026933463067815998),
        (ProblemSpec::t43(2, 3, 4).unwrap(), 0.3299998813115879271),
        (ProblemSpec::t44(1, 1, 2).unwrap(), 0.19623911663108896226),
        (ProblemSpec::t44(3, 2, 5).unwrap(), 0.58975289630310805531),
        (
            ProblemSpec::t51(1, NonnegPolynomial::identity()).unwrap(),
            0.15023345387726981936,
        ),
        (
            ProblemSpec::t51(1, poly(vec![16.0 / 9.0, 18.6095])).unwrap(),
            0.13450765363648931351,
        ),
        (
            ProblemSpec::t51(2, poly(vec![0.5, 0.0, 2.0])).unwrap(),
            0.25166004113350988141,
        ),
    ]
}

#[test]
fn radii_match_multiprecision_roots() {
    for (spec, expected) in oracle_cases() {
        let res = solve(&spec, 1e-12).unwrap();
        assert!(
            (res.radius - expected).abs() < 1e-11,
            "{spec}: {} vs {expected}",
            res.radius
        );
        assert!(res.residual <= RESIDUAL_TOL, "{spec}");
        assert!(res.monotone_certified, "{spec}");
    }
}

#[test]
fn result_invariants() {
    for (spec, _) in oracle_cases() {
        let tol = 1e-12;
        let res = solve(&spec, tol).unwrap();
        assert!(res.final_bracket.contains(res.radius));
        assert!(res.final_bracket.width() <= tol);
        assert!(0.0 <= res.final_bracket.lo && res.final_bracket.hi < 1.0);
        assert!(spec.evaluate_g(res.radius - tol).unwrap() < 0.0);
        assert!(spec.evaluate_g(res.radius + tol).unwrap() >= -RESIDUAL_TOL);
        assert_eq!(res.residual, spec.evaluate_g(res.radius).unwrap().abs());
    }
}

#[test]
fn solving_is_bit_reproducible() {
    for (spec, _) in oracle_cases() {
        assert_eq!(solve(&spec, 1e-12).unwrap(), solve(&spec, 1e-12).unwrap());
    }
}

#[test]
fn tightening_tolerance_moves_radius_less_than_previous_tolerance() {
    for (spec, _) in oracle_cases() {
        let mut previous = solve(&spec, 1e-3).unwrap().radius;
        for tol in [1e-3, 1e-5, 1e-7, 1e-9, 1e-11, 1e-13] {
            let r = solve(&spec, tol / 100.0).unwrap().radius;
            assert!((r - previous).abs() <= tol, "{spec} at {tol}");
            previous = r;
        }
    }
}

#[test]
fn closed_form_reductions() {
    for m in 1..=4 {
        let r41 = solve(&ProblemSpec::t41(m, 0.0).unwrap(), 1e-12)
            .unwrap()
            .radius;
        let r42 = solve(&ProblemSpec::t42(m, 0.0).unwrap(), 1e-12)
            .unwrap()
            .radius;
        assert!((r41 - 5f64.powf(-1.0 / m as f64)).abs() <= 1e-10);
        assert!((r42 - 3f64.powf(-1.0 / m as f64)).abs() <= 1e-10);
    }
}

#[test]
fn brackets_use_dyadic_upper_ends() {
    let b = find_upper_bracket(&ProblemSpec::t34(3, 2, 5, 5).unwrap()).unwrap();
    assert_eq!(b.hi, 0.75);
    assert_eq!(b.lo, 0.0);
    let b = find_upper_bracket(&ProblemSpec::t31(1, 1).unwrap()).unwrap();
    assert_eq!(b.hi, 0.5);
}
