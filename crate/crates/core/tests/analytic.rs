use std::f64::consts::PI;

use harmonic_atlas::analytic::*;
use harmonic_atlas::catalog::catalog;
use harmonic_atlas::{GaussRational, TruncSeries};
use num_complex::Complex64;
use proptest::prelude::*;

fn ex(s: &str) -> AnalyticExpr {
    parse_expr(s).unwrap()
}

fn ints(s: &TruncSeries) -> Vec<i64> {
    s.coeffs()
        .iter()
        .map(|c| c.to_string().parse::<i64>().unwrap_or_else(|_| panic!("not an integer: {c}")))
        .collect()
}

#[test]
fn boundary_values() {
    let phi = ex("z/(1+z^2)");
    for (r, tol) in [(0.99, 0.05), (0.999, 5e-3)] {
        let w = expr_eval(&phi, Complex64::from_polar(r, PI / 3.0), DEFAULT_EPS_POLE).unwrap();
        assert!((w - 1.0).norm() < tol, "r={r}: {w}");
    }
    let w = ex("z/(1-z+z^2)").eval(Complex64::from_polar(0.999, PI / 2.0)).unwrap();
    assert!((w + 1.0).norm() < 5e-3, "{w}");
}

#[test]
fn value_at_origin_is_constant_term() {
    for e in catalog().iter().filter_map(|e| e.h.as_ref()) {
        let v = e.eval(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(v, e.series(4).coeff(0).to_complex());
    }
    let e = ex("1/(1-z) + 2 log(1+z)");
    assert_eq!(e.eval(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
}

#[test]
fn near_pole_is_reported() {
    let k = ex("z/(1-z)^2");
    let err = expr_eval(&k, Complex64::new(1.0 - 1e-3, 0.0), 1e-2).unwrap_err();
    assert!(matches!(err, EvalError::NearPole { .. }));
    assert!(matches!(k.eval(Complex64::new(0.0, 1.0)), Err(EvalError::OutsideDisk(_))));
}

#[test]
fn derivative_examples() {
    let n = 16;
    assert_eq!(expr_derivative(&ex("log(1+z)")).series(n), ex("1/(1+z)").series(n));
    assert_eq!(
        expr_derivative(&ex("z(2-z)/(2(1-z))")).series(n),
        ex("((1-z)^2+1)/(2(1-z)^2)").series(n)
    );
    let dk = expr_derivative(&ex("z/(1-z)^2"));
    assert_eq!(dk.series(n), ex("(1+z)/(1-z)^3").series(n));
    assert_eq!(dk.series(n), ex("z/(1-z)^2").series(n + 1).derivative());
}

#[test]
fn series_examples() {
    assert_eq!(ints(&expr_series(&ex("z/(1-z)^2"), 8)), (0..=8).collect::<Vec<_>>());
    let s = ints(&expr_series(&ex("z/(1-z+z^2)"), 13));
    assert_eq!(&s[1..13], &[1, 1, 0, -1, -1, 0, 1, 1, 0, -1, -1, 0]);
    let h = ex("-1/2 log(1-z) + 1/(4(1-z)^2) - 1/4").series(64);
    assert!(h.coeff(0).is_zero());
    for n in 1..=64i64 {
        let want = GaussRational::from_ratio(1, 2 * n) + GaussRational::from_ratio(n + 1, 4);
        assert_eq!(*h.coeff(n as usize), want, "n={n}");
    }
}

#[test]
fn pole_at_origin_is_rejected() {
    assert!(matches!(
        AnalyticExpr::rational(GaussRational::one(), Poly::one(), Poly::z()),
        Err(ExprError::ZeroDenominator | ExprError::PoleAtOrigin)
    ));
    assert!(parse_expr("1/z").is_err());
}

#[test]
fn transforms() {
    let n = 24;
    assert_eq!(expr_transform(&ex("z/(1-z)^2"), TransformKind::NegReflect).series(n), ex("z/(1+z)^2").series(n));
    assert_eq!(expr_transform(&ex("z/(1+z^2)"), TransformKind::RotIConj).series(n), ex("z/(1-z^2)").series(n));
    let e = ex("5/8 log(1+z) - 1/8 log(1-z) + 1/(4(1-z)) - 1/4");
    let twice = e.transform(TransformKind::NegReflect).transform(TransformKind::NegReflect);
    assert_eq!(twice.series(n), e.series(n));
}

#[test]
fn canonical_text_round_trips() {
    for e in catalog().iter().filter_map(|e| e.h.as_ref()) {
        let back: AnalyticExpr = e.to_string().parse().unwrap();
        assert_eq!(back.series(12), e.series(12), "{e}");
    }
}

fn catalog_exprs() -> Vec<AnalyticExpr> {
    catalog().iter().flat_map(|e| [e.h.clone(), e.g.clone()]).flatten().collect()
}

#[test]
fn derivative_commutes_with_series_for_catalog() {
    for e in catalog_exprs() {
        assert_eq!(e.derivative().series(31), e.series(32).derivative(), "{e}");
    }
}

#[test]
fn transform_matches_series_substitution() {
    let m = GaussRational::from_int(-1);
    for e in catalog_exprs() {
        let by_series = e.series(20).compose_linear(&m).neg();
        assert_eq!(e.transform(TransformKind::NegReflect).series(20), by_series, "{e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eval_agrees_with_series(r in 0.0f64..0.5, t in 0.0f64..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, t);
        for e in catalog_exprs() {
            let exact = e.eval(z).unwrap();
            let approx = e.series(64).eval(z);
            prop_assert!((exact - approx).norm() <= 1e-8 * exact.norm().max(1e-300) + 1e-15, "{} at {}", e, z);
        }
    }
}
