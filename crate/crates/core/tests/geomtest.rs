use std::f64::consts::{FRAC_PI_2, PI};

use harmonic_atlas::analytic::parse_expr;
use harmonic_atlas::catalog::{catalog, catalog_lookup, Family};
use harmonic_atlas::geomtest::*;
use harmonic_atlas::shear::{Axis, HarmonicMap};
use harmonic_atlas::{AnalyticExpr, GaussRational, Poly};
use num_complex::Complex64;
use proptest::prelude::*;

fn expr(s: &str) -> AnalyticExpr {
    parse_expr(s).unwrap()
}

fn conformal(s: &str) -> HarmonicMap {
    HarmonicMap::conformal(expr(s), 16).unwrap()
}

fn entry_map(id: &str) -> HarmonicMap {
    catalog_lookup(id).unwrap().map(32).unwrap()
}

#[test]
fn jacobian_examples() {
    let grid = Grid::default();
    // h = z, g = 2z: constant Jacobian 1 − 4
    let bad = HarmonicMap::from_series(
        expr("z").series(8),
        expr("2z").series(8),
        AnalyticExpr::from_poly(Poly::constant(GaussRational::from_int(2))),
    )
    .unwrap();
    let c = jacobian_min(&bad, &Grid::uniform(4, 16, 0.9).unwrap()).unwrap();
    assert!((c.margin + 3.0).abs() < 1e-12);
    assert!(!c.passes());

    // ω = z: J = |h′|²(1 − |z|²)
    let f = entry_map("f3_cv1");
    let c = jacobian_min(&f, &grid).unwrap();
    assert!(c.margin > 0.0);
    let z = c.witness_z().unwrap();
    let direct = f.dh_at(z).unwrap().norm_sqr() * (1.0 - z.norm_sqr());
    assert!((c.margin - direct).abs() <= 1e-9 * direct.abs().max(1.0));
}

#[test]
fn harmonic_catalog_entries_are_sense_preserving_on_grid() {
    let grid = Grid::uniform(32, 128, 0.99).unwrap();
    for e in catalog().iter().filter(|e| e.is_harmonic()) {
        let f = e.map(32).unwrap();
        let c = jacobian_min(&f, &grid).unwrap();
        assert!(c.margin > 0.0, "{}: {}", e.id, c.margin);
    }
}

/// (φ, μ, ν, axis, reduced form)
fn reduced_forms() -> Vec<(&'static str, f64, f64, Axis, fn(Complex64) -> f64)> {
    vec![
        ("z/(1+z^2)", 0.0, FRAC_PI_2, Axis::Real, |z| ((1.0 - z * z) / (1.0 + z * z)).re),
        ("z/(1-z+z^2)", 0.0, PI / 3.0, Axis::Real, |z| ((1.0 - z * z) / (1.0 - z + z * z)).re),
        ("z - z^2/2", 0.0, 2.0 * PI / 3.0, Axis::Real, |z| (1.0 - z * z * z).re),
        ("z(2-z)/(2(1-z))", FRAC_PI_2, FRAC_PI_2, Axis::Imag, |z| {
            0.5 * (1.0 - z * z + (1.0 + z) / (1.0 - z)).re
        }),
        ("z(2-z^2)/(2(1-z^2))", FRAC_PI_2, FRAC_PI_2, Axis::Imag, |z| {
            0.5 * (1.0 - z * z + (1.0 + z * z) / (1.0 - z * z)).re
        }),
    ]
}

#[test]
fn rz_certificates_for_stated_parameters() {
    let grid = Grid::default();
    for (phi, mu, nu, axis, _) in reduced_forms() {
        let c = rz_certificate(&expr(phi), RZParams { mu, nu }, axis, &grid);
        assert!(c.passes(), "{phi}: {}", c.margin);
    }
    // Re{1 − z³} has grid minimum 1 − 0.999³
    let c = rz_certificate(&expr("z - z^2/2"), RZParams { mu: 0.0, nu: 2.0 * PI / 3.0 }, Axis::Real, &grid);
    assert!((c.margin - (1.0 - 0.999f64.powi(3))).abs() < 1e-12);
}

#[test]
fn stated_nu_for_z_over_1_minus_z_plus_z2_does_not_certify() {
    let c = rz_certificate(
        &expr("z/(1-z+z^2)"),
        RZParams { mu: 0.0, nu: 2.0 * PI / 3.0 },
        Axis::Real,
        &Grid::default(),
    );
    assert!(!c.passes());
}

#[test]
fn rz_search_examples() {
    let grid = Grid::default();
    let c = rz_search(&expr("z/(1-z+z^2)"), Axis::Real, &grid, DEFAULT_PARAM_STEPS).unwrap();
    let p = c.params.unwrap();
    assert!(c.passes());
    assert!(p.mu.min(2.0 * PI - p.mu) < 0.2 && (p.nu - PI / 3.0).abs() < 0.2, "{p:?}");
    assert!(rz_search(&expr("z/(1-z^2)"), Axis::Real, &grid, DEFAULT_PARAM_STEPS).is_none());
    assert!(rz_search(&expr("z"), Axis::Imag, &grid, DEFAULT_PARAM_STEPS).is_some());
}

#[test]
fn expected_direction_flags_hold_for_conformal_entries() {
    let grid = Grid::uniform(32, 128, 0.999).unwrap();
    for e in catalog().iter().filter(|e| matches!(e.family, Family::SZ | Family::T1 | Family::T2)) {
        let phi = e.conformal().unwrap();
        let map = e.map(16).unwrap();
        for (axis, flag) in [(Axis::Real, e.expected.cv_real), (Axis::Imag, e.expected.cv_imag)] {
            match flag {
                Some(true) => assert!(rz_search(phi, axis, &grid, 24).is_some(), "{} {axis}", e.id),
                Some(false) => {
                    assert!(!direction_convexity_probe(&map, axis, 0.999, 64), "{} {axis}", e.id)
                }
                None => {}
            }
        }
    }
}

#[test]
fn probe_falsifiers() {
    for (s, axis) in [
        ("z - z^2/2", Axis::Imag),
        ("z + z^2/2", Axis::Imag),
        ("z(2-z^2)/(2(1-z^2))", Axis::Real),
        ("z/(1-z^2)", Axis::Real),
        ("z/(1+z^2)", Axis::Imag),
        ("z/(1-z)^2", Axis::Imag),
        ("z/(1-z+z^2)", Axis::Imag),
        ("z/(1+z+z^2)", Axis::Imag),
    ] {
        assert!(!direction_convexity_probe(&conformal(s), axis, 0.999, 64), "{s} {axis}");
    }
    assert!(direction_convexity_probe(&conformal("z/(1-z)^2"), Axis::Real, 0.999, 64));
}

#[test]
fn f3_is_not_starlike() {
    let f = entry_map("f3_cv1");
    let (a, b) = (-FRAC_PI_2 + 0.1, FRAC_PI_2 - 0.1);
    for k in 0..32 {
        let t = a + (b - a) * k as f64 / 31.0;
        let v = starlike_derivative(&f, t, 0.9999).unwrap();
        let expected = 2.0 * t.cos() / (-3.0 + (2.0 * t).cos());
        assert!(v < 0.0);
        assert!((v - expected).abs() < 1e-3, "t={t}: {v} vs {expected}");
    }
}

#[test]
fn koebe_is_starlike_on_the_negative_axis() {
    let r = 0.9;
    let v = starlike_derivative(&conformal("z/(1-z)^2"), PI, r).unwrap();
    let oracle = (1.0 - r) / (1.0 + r);
    assert!((v - oracle).abs() < 1e-12);
}

#[test]
fn u_class() {
    let grid = Grid::default();
    assert_eq!(u_class_margin(&expr("z"), &grid).unwrap().margin, 1.0);
    for e in catalog().iter().filter(|e| e.family == Family::SZ) {
        let c = u_class_margin(e.conformal().unwrap(), &grid).unwrap();
        assert!(c.passes(), "{}: {}", e.id, c.margin);
    }
    for s in ["z(2-z+z^2)/(2(1-z+z^2))", "z(2+z+z^2)/(2(1+z+z^2))"] {
        assert!(u_class_margin(&expr(s), &grid).unwrap().margin < 0.0, "{s}");
    }
}

#[test]
fn m_theta() {
    let grid = Grid::default();
    let c = m_theta_check(&entry_map("f9_cv1"), PI, &grid).unwrap();
    assert!(c.margin > 0.0, "{}", c.margin);
    let c = m_theta_check(&entry_map("f3_cv1"), 0.0, &grid).unwrap();
    assert!(c.margin > 0.0, "{}", c.margin);
    assert!(matches!(
        m_theta_check(&conformal("z"), 0.0, &grid),
        Err(GeomError::SeriesMismatch { .. })
    ));
}

#[test]
fn phi3_boundary_approaches_stated_curve() {
    let pts = boundary_trace(&conformal("z(2-z^2)/(2(1-z^2))"), 0.9999, 720).unwrap();
    for (k, w) in pts.iter().enumerate() {
        let th = std::f64::consts::TAU * k as f64 / 720.0;
        // away from θ ∈ {0, π}, where the image runs off to infinity
        if th.sin().abs() < 0.2 {
            continue;
        }
        let target = Complex64::new(th.cos() / 2.0, th.sin() / 2.0 + 1.0 / (4.0 * th.sin()));
        assert!((w - target).norm() < 1e-2, "θ={th}: {w} vs {target}");
    }
}

#[test]
fn phi4_and_phi5_boundaries_where_resolvable() {
    let phi5 = boundary_trace(&conformal("z(2-z)/(2(1-z)^2)"), 0.9999, 720).unwrap();
    for (k, w) in phi5.iter().enumerate() {
        let th = std::f64::consts::TAU * k as f64 / 720.0;
        if th.min(std::f64::consts::TAU - th) < 0.7 {
            continue;
        }
        assert!((8.0 * w.re + 16.0 * w.im * w.im + 3.0).abs() <= 1e-2, "θ={th}");
    }
    let phi4 = boundary_trace(&conformal("z(2-z)/(2(1-z^2))"), 0.9999, 720).unwrap();
    for (k, w) in phi4.iter().enumerate() {
        let th = std::f64::consts::TAU * k as f64 / 720.0;
        if th.sin().abs() < 0.1 {
            continue;
        }
        assert!((w.re - 0.25).abs() < 1e-2, "θ={th}: {w}");
        assert!(w.im.abs() >= 3f64.sqrt() / 4.0 - 1e-2, "θ={th}: {w}");
    }
}

#[test]
fn certificate_serializes() {
    let c = rz_certificate(&expr("z"), RZParams { mu: 0.0, nu: 0.0 }, Axis::Real, &Grid::uniform(2, 4, 0.5).unwrap());
    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["kind"], "rz_real");
    assert!(json["margin"].is_number());
    assert!(json["witness"].is_array());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rz_reduced_forms_agree(r in 0.0f64..0.999, t in 0.0f64..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, t);
        for (phi, mu, nu, axis, reduced) in reduced_forms() {
            let d = expr(phi).derivative().eval(z).unwrap();
            let full = rz_value(d, z, RZParams { mu, nu }, axis);
            let want = reduced(z);
            prop_assert!((full - want).abs() <= 1e-12 * want.abs().max(1.0), "{} {} {}", phi, full, want);
        }
    }

    #[test]
    fn jacobian_factorizes(r in 0.0f64..0.99, t in 0.0f64..std::f64::consts::TAU) {
        let f = entry_map("f9_cv1");
        let z = Complex64::from_polar(r, t);
        let (dh, dg) = (f.dh_at(z).unwrap(), f.dg_at(z).unwrap());
        let w = f.omega().eval(z).unwrap();
        let j = dh.norm_sqr() - dg.norm_sqr();
        prop_assert!((j - dh.norm_sqr() * (1.0 - w.norm_sqr())).abs() <= 1e-9 * j.abs().max(1.0));
    }
}
