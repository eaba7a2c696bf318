//! Grid-sampled geometric checks. A certificate's margin is a minimum over a finite
//! sample, so a nonnegative margin is evidence and a negative one is a counterexample.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::analytic::{AnalyticExpr, EvalError};
use crate::shear::{Axis, HarmonicMap};

/// Tolerance for nonnegativity margins.
pub const TOL: f64 = 1e-9;

/// Deadband for sign changes in [`direction_convexity_probe`].
pub const DEADBAND: f64 = 1e-8;

pub const DEFAULT_PROBE_SAMPLES: usize = 8192;

/// ν takes `steps + 1` values in `[0, π]`, μ takes `2·steps` values in `[0, 2π)`.
pub const DEFAULT_PARAM_STEPS: usize = 48;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("value vanishes at {0}")]
    ZeroValue(Complex64),
    #[error("g' = e^(i theta) z h' fails at coefficient {index}")]
    SeriesMismatch { index: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}

/// Polar sample of the disk: every radius times `angles_count` equispaced angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    radii: Vec<f64>,
    angles_count: usize,
    r_max: f64,
}

impl Grid {
    pub fn new(radii: Vec<f64>, angles_count: usize) -> Result<Self, GeomError> {
        if radii.is_empty() || angles_count == 0 {
            return Err(GeomError::InvalidGrid("need at least one radius and one angle"));
        }
        if !radii.iter().all(|r| *r > 0.0 && *r < 1.0) {
            return Err(GeomError::InvalidGrid("radii must lie in (0, 1)"));
        }
        if !radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(GeomError::InvalidGrid("radii must be strictly increasing"));
        }
        let r_max = *radii.last().unwrap();
        Ok(Self { radii, angles_count, r_max })
    }

    /// Radii `r_max·k/n`, k = 1..=n.
    pub fn uniform(n: usize, angles_count: usize, r_max: f64) -> Result<Self, GeomError> {
        Self::new((1..=n).map(|k| r_max * k as f64 / n as f64).collect(), angles_count)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_count(&self) -> usize {
        self.angles_count
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let m = self.angles_count;
        self.radii
            .iter()
            .flat_map(move |&r| (0..m).map(move |j| Complex64::from_polar(r, TAU * j as f64 / m as f64)))
    }
}

impl Default for Grid {
    /// 64 radii up to 0.999, 256 angles.
    fn default() -> Self {
        Self::uniform(64, 256, 0.999).expect("valid default grid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RZParams {
    pub mu: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    RzReal,
    RzImag,
    Jacobian,
    Starlike,
    UClass,
    MTheta,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Grid minimum of the defining quantity.
    pub margin: f64,
    /// Point `[re, im]` attaining the minimum.
    pub witness: Option<[f64; 2]>,
    pub params: Option<RZParams>,
    pub tol: f64,
}

impl Certificate {
    fn new(kind: CertificateKind) -> Self {
        Self { kind, margin: f64::INFINITY, witness: None, params: None, tol: TOL }
    }

    fn offer(&mut self, value: f64, z: Complex64) {
        // NaN counts as a failure
        if !(value >= self.margin) {
            self.margin = if value.is_nan() { f64::NEG_INFINITY } else { value };
            self.witness = Some([z.re, z.im]);
        }
    }

    pub fn passes(&self) -> bool {
        self.margin >= -self.tol
    }

    pub fn witness_z(&self) -> Option<Complex64> {
        self.witness.map(|[re, im]| Complex64::new(re, im))
    }
}

/// `min |h′|² − |g′|²`.
pub fn jacobian_min(f: &HarmonicMap, grid: &Grid) -> Result<Certificate, GeomError> {
    let mut cert = Certificate::new(CertificateKind::Jacobian);
    for z in grid.points() {
        let (dh, dg) = (f.dh_at(z)?, f.dg_at(z)?);
        cert.offer(dh.norm_sqr() - dg.norm_sqr(), z);
    }
    Ok(cert)
}

fn rz_kind(axis: Axis) -> CertificateKind {
    match axis {
        Axis::Real => CertificateKind::RzReal,
        Axis::Imag => CertificateKind::RzImag,
    }
}

/// The Royster–Ziegler quantity at one point, given `φ′(z)`:
/// `Re{c·(1 − 2z e^{−iμ} cos ν + z² e^{−2iμ}) φ′(z)}` with `c = e^{iμ}` (real
/// direction) or `c = −i e^{iμ}` (imaginary direction).
pub fn rz_value(dphi: Complex64, z: Complex64, p: RZParams, axis: Axis) -> f64 {
    let rot = Complex64::from_polar(1.0, -p.mu);
    let lead = match axis {
        Axis::Real => Complex64::from_polar(1.0, p.mu),
        Axis::Imag => Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, p.mu),
    };
    (lead * (1.0 - 2.0 * z * rot * p.nu.cos() + z * z * rot * rot) * dphi).re
}

/// `φ′` on the grid; a point where it cannot be evaluated is kept as NaN.
fn derivative_samples(phi: &AnalyticExpr, grid: &Grid) -> Vec<(Complex64, Complex64)> {
    let dphi = phi.derivative();
    grid.points()
        .map(|z| (z, dphi.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))))
        .collect()
}

pub fn rz_certificate(phi: &AnalyticExpr, p: RZParams, axis: Axis, grid: &Grid) -> Certificate {
    let mut cert = Certificate::new(rz_kind(axis));
    cert.params = Some(p);
    for (z, d) in derivative_samples(phi, grid) {
        cert.offer(rz_value(d, z, p, axis), z);
    }
    cert
}

/// Scans `μ = πk/steps` (k < 2·steps) and `ν = πj/steps` (j ≤ steps) for the
/// parameters with the largest margin; `None` when no margin reaches `−TOL`.
pub fn rz_search(phi: &AnalyticExpr, axis: Axis, grid: &Grid, param_steps: usize) -> Option<Certificate> {
    let steps = param_steps.max(1);
    // Re{c e^{iμ}A − 2cos ν c B + c e^{−iμ}C}, A = φ′, B = zφ′, C = z²φ′;
    // the imaginary-direction variant takes imaginary parts instead (c = −i).
    let pick = |w: Complex64| match axis {
        Axis::Real => w.re,
        Axis::Imag => w.im,
    };
    let samples: Vec<(Complex64, Complex64, f64, Complex64)> = derivative_samples(phi, grid)
        .into_iter()
        .map(|(z, d)| (z, d, pick(z * d), z * z * d))
        .collect();

    let mut best: Option<(f64, RZParams, Complex64)> = None;
    for k in 0..2 * steps {
        let mu = PI * k as f64 / steps as f64;
        let (e_pos, e_neg) = (Complex64::from_polar(1.0, mu), Complex64::from_polar(1.0, -mu));
        for j in 0..=steps {
            let nu = PI * j as f64 / steps as f64;
            let two_cos = 2.0 * nu.cos();
            let floor = best.map_or(f64::NEG_INFINITY, |b| b.0);
            let mut margin = f64::INFINITY;
            let mut witness = Complex64::new(0.0, 0.0);
            for &(z, a, b, c) in &samples {
                let v = pick(e_pos * a + e_neg * c) - two_cos * b;
                if !(v >= margin) {
                    margin = if v.is_nan() { f64::NEG_INFINITY } else { v };
                    witness = z;
                    if margin <= floor {
                        break;
                    }
                }
            }
            if margin > floor {
                best = Some((margin, RZParams { mu, nu }, witness));
            }
        }
    }
    let (margin, params, z) = best?;
    (margin >= -TOL).then(|| Certificate {
        kind: rz_kind(axis),
        margin,
        witness: Some([z.re, z.im]),
        params: Some(params),
        tol: TOL,
    })
}

/// Largest number of crossings of the traced curve with a test line parallel to
/// `direction`, and the line's offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeReport {
    pub max_crossings: usize,
    pub worst_offset: f64,
    pub lines: usize,
}

impl ProbeReport {
    /// More than two crossings means some line meets the image in a disconnected set.
    pub fn convex(&self) -> bool {
        self.max_crossings <= 2
    }
}

/// Crossing counts for `lines` lines placed at quantiles of the orthogonal coordinate
/// of `F(r e^{it})`. Points that fail to evaluate are skipped.
pub fn probe_report(f: &HarmonicMap, direction: Axis, r: f64, lines: usize, samples: usize) -> ProbeReport {
    let ortho: Vec<f64> = (0..samples)
        .filter_map(|k| f.eval(Complex64::from_polar(r, TAU * k as f64 / samples as f64)).ok())
        .map(|w| match direction {
            Axis::Real => w.im,
            Axis::Imag => w.re,
        })
        .filter(|v| v.is_finite())
        .collect();
    let mut report = ProbeReport { max_crossings: 0, worst_offset: f64::NAN, lines };
    if ortho.is_empty() {
        return report;
    }
    let mut sorted = ortho.clone();
    sorted.sort_by(f64::total_cmp);
    for l in 0..lines {
        let q = (l as f64 + 0.5) / lines as f64;
        let c = sorted[((q * sorted.len() as f64) as usize).min(sorted.len() - 1)];
        let signs: Vec<bool> = ortho
            .iter()
            .filter(|v| (**v - c).abs() > DEADBAND)
            .map(|v| *v > c)
            .collect();
        let n = signs.len();
        let crossings = (0..n).filter(|&i| signs[i] != signs[(i + 1) % n]).count();
        if crossings > report.max_crossings {
            report.max_crossings = crossings;
            report.worst_offset = c;
        }
    }
    report
}

/// Falsifier for convexity in `direction`: `false` iff some test line crosses the
/// traced boundary more than twice.
pub fn direction_convexity_probe(f: &HarmonicMap, direction: Axis, r: f64, lines: usize) -> bool {
    probe_report(f, direction, r, lines, DEFAULT_PROBE_SAMPLES).convex()
}

/// `Re{Df/F}` at `z = r e^{it}`, with `Df = z h′ − conj(z g′)`; the rate of change
/// of `arg F(r e^{it})` in `t`.
pub fn starlike_derivative(f: &HarmonicMap, t: f64, r: f64) -> Result<f64, GeomError> {
    let z = Complex64::from_polar(r, t);
    let w = f.eval(z)?;
    if w.norm() < 1e-12 {
        return Err(GeomError::ZeroValue(z));
    }
    let df = z * f.dh_at(z)? - (z * f.dg_at(z)?).conj();
    Ok((df / w).re)
}

/// `min 1 − |f′(z)(z/f(z))² − 1|`.
pub fn u_class_margin(f: &AnalyticExpr, grid: &Grid) -> Result<Certificate, GeomError> {
    let df = f.derivative();
    let mut cert = Certificate::new(CertificateKind::UClass);
    for z in grid.points() {
        let w = f.eval(z)?;
        if w.norm() < 1e-12 {
            return Err(GeomError::ZeroValue(z));
        }
        let q = z / w;
        cert.offer(1.0 - (df.eval(z)? * q * q - 1.0).norm(), z);
    }
    Ok(cert)
}

/// Membership evidence for `ℳ(θ)`: the identity `g′ = e^{iθ} z h′` on the series
/// (exact for θ ∈ {0, π}), then `min Re(1 + z h″/h′) + ½` on the grid.
pub fn m_theta_check(f: &HarmonicMap, theta: f64, grid: &Grid) -> Result<Certificate, GeomError> {
    let n = f.order();
    let dh = f.h_series().derivative();
    let dg = f.g_series().derivative();
    // coefficient k of g′ against coefficient k−1 of h′
    let rot = Complex64::from_polar(1.0, theta);
    let exact_sign = if theta == 0.0 {
        Some(1)
    } else if theta == PI {
        Some(-1)
    } else {
        None
    };
    for k in 0..n {
        let lhs = dg.coeff(k);
        let ok = match (k, exact_sign) {
            (0, _) => lhs.is_zero(),
            (_, Some(1)) => *lhs == *dh.coeff(k - 1),
            (_, Some(_)) => *lhs == -dh.coeff(k - 1),
            (_, None) => (lhs.to_complex() - rot * dh.coeff(k - 1).to_complex()).norm() <= 1e-12,
        };
        if !ok {
            return Err(GeomError::SeriesMismatch { index: k });
        }
    }
    let mut cert = Certificate::new(CertificateKind::MTheta);
    for z in grid.points() {
        let v = (1.0 + z * f.d2h_at(z)? / f.dh_at(z)?).re + 0.5;
        cert.offer(v, z);
    }
    Ok(cert)
}

/// `F(r e^{2πik/samples})`, k = 0…samples−1 (closed: the last point joins the first).
pub fn boundary_trace(f: &HarmonicMap, r: f64, samples: usize) -> Result<Vec<Complex64>, EvalError> {
    (0..samples)
        .map(|k| f.eval(Complex64::from_polar(r, TAU * k as f64 / samples as f64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::parse_expr;

    fn conformal(src: &str) -> HarmonicMap {
        HarmonicMap::conformal(parse_expr(src).unwrap(), 16).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(vec![0.5, 0.2], 4).is_err());
        assert!(Grid::new(vec![0.5, 1.0], 4).is_err());
        let g = Grid::uniform(4, 8, 0.9).unwrap();
        assert_eq!(g.points().count(), 32);
        assert_eq!(g.r_max(), 0.9);
    }

    #[test]
    fn identity_jacobian_is_one() {
        let c = jacobian_min(&conformal("z"), &Grid::uniform(4, 16, 0.99).unwrap()).unwrap();
        assert!((c.margin - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_is_certified_in_both_directions() {
        let g = Grid::uniform(8, 64, 0.999).unwrap();
        let z = parse_expr("z").unwrap();
        assert!(rz_search(&z, Axis::Real, &g, 12).is_some());
        assert!(rz_search(&z, Axis::Imag, &g, 12).is_some());
    }

    #[test]
    fn starlike_identity() {
        let v = starlike_derivative(&conformal("z"), 0.7, 0.9).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }
}
