//! Shear construction: a conformal map convex in one direction plus a dilatation ω
//! gives a harmonic map `f = h + ḡ` convex in the same direction.
//!
//! Real direction: `h − g = φ`, `h′ = φ′/(1−ω)`. Imaginary direction: `h + g = ψ`,
//! `h′ = ψ′/(1+ω)`. Both are computed as exact truncated series.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::analytic::{AnalyticExpr, EvalError, Poly, Term};
use crate::numkernel::{GaussRational, TruncSeries};

/// Largest admissible grid value of |ω|.
const OMEGA_BOUND: f64 = 1.0 - 1e-9;

/// Beyond this radius Horner evaluation of a truncated series is not trusted.
pub const SERIES_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Real,
    Imag,
}

impl std::str::FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "real" => Ok(Axis::Real),
            "imag" => Ok(Axis::Imag),
            other => Err(format!("unknown axis {other:?} (expected real or imag)")),
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Real => "real",
            Axis::Imag => "imag",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShearError {
    #[error("not normalized: {0}")]
    NotNormalized(&'static str),
    #[error("dilatation too large: max |omega| = {max} on the sampling grid")]
    DilatationTooLarge { max: f64 },
    #[error("closed form for {part} does not match the series")]
    ClosedFormMismatch { part: &'static str },
}

/// `f = h + ḡ` with dilatation `ω = g′/h′`.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    h_series: TruncSeries,
    g_series: TruncSeries,
    h_expr: Option<AnalyticExpr>,
    g_expr: Option<AnalyticExpr>,
    dh_expr: Option<AnalyticExpr>,
    dg_expr: Option<AnalyticExpr>,
    d2h_expr: Option<AnalyticExpr>,
    omega: AnalyticExpr,
}

impl HarmonicMap {
    /// Checks only the normalization `h(0)=0, h′(0)=1, g(0)=0`; see [`dilatation_check`].
    pub fn from_series(
        h_series: TruncSeries,
        g_series: TruncSeries,
        omega: AnalyticExpr,
    ) -> Result<Self, ShearError> {
        if h_series.order() < 1 {
            return Err(ShearError::NotNormalized("series order must be at least 1"));
        }
        if !h_series.coeff(0).is_zero() || !h_series.coeff(1).is_one() {
            return Err(ShearError::NotNormalized("h(0) = 0 and h'(0) = 1 required"));
        }
        if !g_series.coeff(0).is_zero() {
            return Err(ShearError::NotNormalized("g(0) = 0 required"));
        }
        Ok(Self {
            h_series,
            g_series,
            h_expr: None,
            g_expr: None,
            dh_expr: None,
            dg_expr: None,
            d2h_expr: None,
            omega,
        })
    }

    /// Map given by closed forms for both parts.
    pub fn from_exprs(
        h: AnalyticExpr,
        g: AnalyticExpr,
        omega: AnalyticExpr,
        order: usize,
    ) -> Result<Self, ShearError> {
        let map = Self::from_series(h.series(order), g.series(order), omega)?;
        map.with_closed_forms(h, g)
    }

    /// Conformal map `f = φ` (g ≡ 0, ω ≡ 0).
    pub fn conformal(phi: AnalyticExpr, order: usize) -> Result<Self, ShearError> {
        Self::from_exprs(phi, AnalyticExpr::zero(), AnalyticExpr::zero(), order)
    }

    /// Attaches closed forms after checking them against the series exactly.
    pub fn with_closed_forms(mut self, h: AnalyticExpr, g: AnalyticExpr) -> Result<Self, ShearError> {
        let n = self.order();
        if h.series(n) != self.h_series {
            return Err(ShearError::ClosedFormMismatch { part: "h" });
        }
        if g.series(n) != self.g_series {
            return Err(ShearError::ClosedFormMismatch { part: "g" });
        }
        let dh = h.derivative();
        self.d2h_expr = Some(dh.derivative());
        self.dh_expr = Some(dh);
        self.dg_expr = Some(g.derivative());
        self.h_expr = Some(h);
        self.g_expr = Some(g);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.h_series.order().min(self.g_series.order())
    }

    pub fn h_series(&self) -> &TruncSeries {
        &self.h_series
    }

    pub fn g_series(&self) -> &TruncSeries {
        &self.g_series
    }

    pub fn h_expr(&self) -> Option<&AnalyticExpr> {
        self.h_expr.as_ref()
    }

    pub fn g_expr(&self) -> Option<&AnalyticExpr> {
        self.g_expr.as_ref()
    }

    /// Closed form of `h′`, available for every shear of a rational φ and rational ω.
    pub fn dh_expr(&self) -> Option<&AnalyticExpr> {
        self.dh_expr.as_ref()
    }

    pub fn dg_expr(&self) -> Option<&AnalyticExpr> {
        self.dg_expr.as_ref()
    }

    pub fn omega(&self) -> &AnalyticExpr {
        &self.omega
    }

    /// Whether `g′(0) = 0` (class 𝒮_H⁰ normalization).
    pub fn is_sh0(&self) -> bool {
        self.g_series.coeff(1).is_zero()
    }

    pub fn is_conformal(&self) -> bool {
        self.g_series.is_zero()
    }

    /// `h(z) + conj(g(z))`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        Ok(self.h_at(z)? + self.g_at(z)?.conj())
    }

    pub fn h_at(&self, z: Complex64) -> Result<Complex64, EvalError> {
        part_at(z, self.h_expr.as_ref(), self.dh_expr.as_ref(), &self.h_series)
    }

    pub fn g_at(&self, z: Complex64) -> Result<Complex64, EvalError> {
        part_at(z, self.g_expr.as_ref(), self.dg_expr.as_ref(), &self.g_series)
    }

    pub fn dh_at(&self, z: Complex64) -> Result<Complex64, EvalError> {
        deriv_at(z, self.dh_expr.as_ref(), &self.h_series, 1)
    }

    pub fn dg_at(&self, z: Complex64) -> Result<Complex64, EvalError> {
        deriv_at(z, self.dg_expr.as_ref(), &self.g_series, 1)
    }

    pub fn d2h_at(&self, z: Complex64) -> Result<Complex64, EvalError> {
        deriv_at(z, self.d2h_expr.as_ref(), &self.h_series, 2)
    }

    /// `−f(−z)`: both parts reflected, dilatation becomes `ω(−z)`.
    pub fn neg_reflect(&self) -> Self {
        use crate::analytic::TransformKind::NegReflect;
        let m = GaussRational::from_int(-1);
        let refl = |s: &TruncSeries| s.compose_linear(&m).neg();
        let omega = self
            .omega
            .scale_argument(&m, &GaussRational::one())
            .expect("unimodular substitution preserves the disk");
        Self {
            h_series: refl(&self.h_series),
            g_series: refl(&self.g_series),
            h_expr: self.h_expr.as_ref().map(|e| e.transform(NegReflect)),
            g_expr: self.g_expr.as_ref().map(|e| e.transform(NegReflect)),
            // (−e(−z))′ = e′(−z), (−e(−z))″ = −e″(−z)
            dh_expr: self.dh_expr.as_ref().map(|e| e.transform(NegReflect).neg()),
            dg_expr: self.dg_expr.as_ref().map(|e| e.transform(NegReflect).neg()),
            d2h_expr: self.d2h_expr.as_ref().map(|e| e.transform(NegReflect)),
            omega,
        }
    }
}

fn check_disk(z: Complex64) -> Result<(), EvalError> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(EvalError::OutsideDisk(z))
    }
}

fn part_at(
    z: Complex64,
    expr: Option<&AnalyticExpr>,
    deriv: Option<&AnalyticExpr>,
    series: &TruncSeries,
) -> Result<Complex64, EvalError> {
    if let Some(e) = expr {
        return e.eval(z);
    }
    check_disk(z)?;
    if let Some(d) = deriv {
        return integrate_from_origin(d, z);
    }
    if z.norm() <= SERIES_RADIUS + 1e-12 {
        return Ok(series.eval(z));
    }
    Err(EvalError::NearPole { distance: 1.0 - z.norm() })
}

fn deriv_at(
    z: Complex64,
    expr: Option<&AnalyticExpr>,
    series: &TruncSeries,
    k: usize,
) -> Result<Complex64, EvalError> {
    if let Some(e) = expr {
        return e.eval(z);
    }
    check_disk(z)?;
    if z.norm() <= SERIES_RADIUS + 1e-12 {
        let s = (0..k).fold(series.clone(), |s, _| s.derivative());
        return Ok(s.eval(z));
    }
    Err(EvalError::NearPole { distance: 1.0 - z.norm() })
}

/// `∫₀^z d(t) dt` along the segment, Gauss–Legendre on panels graded towards `z`.
fn integrate_from_origin(d: &AnalyticExpr, z: Complex64) -> Result<Complex64, EvalError> {
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // panel ends 1/2, 3/4, … until the remaining gap is small relative to the
    // distance from z to the nearest singularity
    let reach = d
        .singularities()
        .iter()
        .map(|s| (z - s).norm())
        .fold(f64::INFINITY, f64::min);
    let mut breaks = vec![0.0];
    let mut gap = 1.0;
    while gap * z.norm() > reach.max(1e-12) / 4.0 && breaks.len() < 60 {
        gap /= 2.0;
        breaks.push(1.0 - gap);
    }
    breaks.push(1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        for &(x, wt) in gauss_legendre() {
            acc += d.eval_with(z * (mid + half * x), 0.0)? * (wt * half);
        }
    }
    Ok(acc * z)
}

/// 20-point Gauss–Legendre rule on [−1, 1] (Newton iteration on P₂₀).
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 20;
        let mut out = Vec::with_capacity(N);
        for k in 0..N {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=N {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

/// Collapses a log-free expression to a single fraction `P/Q`.
fn as_fraction(e: &AnalyticExpr) -> Option<(Poly, Poly)> {
    let mut acc = (Poly::zero(), Poly::one());
    for t in e.terms() {
        match t {
            Term::Rational { c, num, den } => {
                let num = num.scale(c);
                acc = (acc.0.mul(den).add(&num.mul(&acc.1)), acc.1.mul(den));
            }
            Term::Log { .. } => return None,
        }
    }
    Some(acc)
}

fn sup_modulus(omega: &AnalyticExpr) -> f64 {
    let mut best: f64 = 0.0;
    for k in 1..=32 {
        let r = 0.999 * k as f64 / 32.0;
        for j in 0..128 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 128.0);
            match omega.eval(z) {
                Ok(w) => best = best.max(w.norm()),
                Err(_) => return f64::INFINITY,
            }
        }
    }
    best
}

fn shear(
    conformal: &AnalyticExpr,
    omega: &AnalyticExpr,
    order: usize,
    axis: Axis,
) -> Result<HarmonicMap, ShearError> {
    if order < 1 {
        return Err(ShearError::NotNormalized("series order must be at least 1"));
    }
    let phi = conformal.series(order);
    if !phi.coeff(0).is_zero() || !phi.coeff(1).is_one() {
        return Err(ShearError::NotNormalized("conformal map needs value 0 and derivative 1 at 0"));
    }
    let w = omega.series(order - 1);
    if !w.coeff(0).is_zero() {
        return Err(ShearError::NotNormalized("dilatation must vanish at 0"));
    }
    let max = sup_modulus(omega);
    if !(max < OMEGA_BOUND) {
        return Err(ShearError::DilatationTooLarge { max });
    }
    let one = TruncSeries::one(order - 1);
    let denom = match axis {
        Axis::Real => one.sub(&w),
        Axis::Imag => one.add(&w),
    };
    let dphi = phi.derivative();
    let dh = dphi.mul(&denom.reciprocal().expect("1 ± ω(0) = 1"));
    let h = dh.antiderivative();
    let g = match axis {
        Axis::Real => h.sub(&phi),
        Axis::Imag => phi.sub(&h),
    };
    let mut map = HarmonicMap::from_series(h, g, omega.clone())?;

    // h′ = φ′·Q/(Q ∓ P) for ω = P/Q, and g′ = ω h′
    if let Some((p, q)) = as_fraction(omega) {
        let dconf = conformal.derivative();
        let den = match axis {
            Axis::Real => q.sub(&p),
            Axis::Imag => q.add(&p),
        };
        if let Ok(dh) = dconf.mul_rational(&q, &den) {
            map.dg_expr = dh.mul_rational(&p, &q).ok();
            map.d2h_expr = Some(dh.derivative());
            map.dh_expr = Some(dh);
        }
    }
    Ok(map)
}

pub fn shear_real(phi: &AnalyticExpr, omega: &AnalyticExpr, order: usize) -> Result<HarmonicMap, ShearError> {
    shear(phi, omega, order, Axis::Real)
}

pub fn shear_imag(psi: &AnalyticExpr, omega: &AnalyticExpr, order: usize) -> Result<HarmonicMap, ShearError> {
    shear(psi, omega, order, Axis::Imag)
}

pub fn harmonic_eval(f: &HarmonicMap, z: Complex64) -> Result<Complex64, EvalError> {
    f.eval(z)
}

/// Exact test of `g′ = ω·h′` through order N−1.
pub fn dilatation_check(f: &HarmonicMap) -> bool {
    let n = f.order();
    if n == 0 {
        return true;
    }
    let dh = f.h_series.truncate(n).derivative();
    let dg = f.g_series.truncate(n).derivative();
    dg == f.omega.series(n - 1).mul(&dh)
}
