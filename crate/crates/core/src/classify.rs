//! Exact coefficient classes and the necessary conditions used to prune candidates:
//! `|b₂| ≤ ½`, `Re(g′/φ′) > −½`, and the coefficient bound for series subordinate
//! to a convex map.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::analytic::{AnalyticExpr, EvalError};
use crate::geomtest::Grid;
use crate::numkernel::{GaussRational, Rational, TruncSeries};
use crate::shear::HarmonicMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffClass {
    Integer,
    HalfInteger,
    Neither,
}

impl CoeffClass {
    pub fn is_half_integer(self) -> bool {
        self != CoeffClass::Neither
    }
}

impl std::fmt::Display for CoeffClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoeffClass::Integer => "integer",
            CoeffClass::HalfInteger => "half_integer",
            CoeffClass::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub value: GaussRational,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Violation", 2)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffClassReport {
    pub class: CoeffClass,
    pub first_violation: Option<Violation>,
}

fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

fn is_half_integer(r: &Rational) -> bool {
    // denominator 1 or 2 (always positive, lowest terms)
    r.denom().is_one() || *r.denom() == 2.into()
}

/// Classifies `c₀ … c_upto` (clamped to the series order). Exact; a coefficient with a
/// nonzero imaginary part is a violation.
pub fn coeff_class(s: &TruncSeries, upto: usize) -> CoeffClassReport {
    let mut class = CoeffClass::Integer;
    for n in 0..=upto.min(s.order()) {
        let c = s.coeff(n);
        if !c.im.is_zero() || !is_half_integer(&c.re) {
            return CoeffClassReport {
                class: CoeffClass::Neither,
                first_violation: Some(Violation { index: n, value: c.clone() }),
            };
        }
        if !is_integer(&c.re) {
            class = CoeffClass::HalfInteger;
        }
    }
    CoeffClassReport { class, first_violation: None }
}

/// Reports for `h` and `g`; the map has half-integer coefficients iff both do.
pub fn classify_harmonic(f: &HarmonicMap, upto: usize) -> (CoeffClassReport, CoeffClassReport) {
    (coeff_class(f.h_series(), upto), coeff_class(f.g_series(), upto))
}

/// `|b₂|²`, exact. Sense-preserving maps with `b₁ = 0` have `|b₂|² ≤ 1/4`.
pub fn b2_bound_check(f: &HarmonicMap) -> Rational {
    if f.g_series().order() < 2 {
        return Rational::zero();
    }
    f.g_series().coeff(2).norm_sqr()
}

/// Grid minimum of `Re{g′/φ′} + ½`; positive is necessary for sense preservation.
pub fn halfplane_subordination_margin(
    g_expr: &AnalyticExpr,
    phi_expr: &AnalyticExpr,
    grid: &Grid,
) -> Result<f64, EvalError> {
    let dg = g_expr.derivative();
    let dphi = phi_expr.derivative();
    let mut best = f64::INFINITY;
    for z in grid.points() {
        best = best.min((dg.eval(z)? / dphi.eval(z)?).re);
    }
    Ok(best + 0.5)
}

/// Same margin computed from a map, with `φ = h − g`; works without closed forms of h, g.
pub fn halfplane_margin_of_map(f: &HarmonicMap, grid: &Grid) -> Result<f64, EvalError> {
    let mut best = f64::INFINITY;
    for z in grid.points() {
        let (dh, dg): (Complex64, Complex64) = (f.dh_at(z)?, f.dg_at(z)?);
        best = best.min((dg / (dh - dg)).re);
    }
    Ok(best + 0.5)
}

/// `max_{1≤n≤N} |cₙ|²`, exact.
pub fn rogosinski_coeff_bound(s: &TruncSeries) -> Rational {
    (1..=s.order()).map(|n| s.coeff(n).norm_sqr()).max().unwrap_or_else(Rational::zero)
}

/// Exact series of `g′/φ′` with `φ = h − g`, through order N−1.
pub fn g_over_phi_series(f: &HarmonicMap) -> TruncSeries {
    let dh = f.h_series().derivative();
    let dg = f.g_series().derivative();
    let dphi = dh.sub(&dg);
    dg.mul(&dphi.reciprocal().expect("phi'(0) = 1 for normalized maps"))
}

/// `(n₀, |n₀ b_{n₀}|²)` for the first nonzero `b_n`, n ≥ 2. Subordination of `g′/φ′`
/// to `z/(1−z)` forces `|n₀ b_{n₀}| ≤ 1`, which rules out nonzero integer `b_{n₀}`.
pub fn leading_g_weight(f: &HarmonicMap) -> Option<(usize, Rational)> {
    let g = f.g_series();
    (2..=g.order()).find(|&n| !g.coeff(n).is_zero()).map(|n| {
        let w = g.coeff(n).scale(&Rational::from_integer(n.into()));
        (n, w.norm_sqr())
    })
}

