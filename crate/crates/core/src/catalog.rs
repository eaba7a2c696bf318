//! The function atlas: every named map with its closed form and expected flags.
//!
//! Conformal sets: `S_Z` (integer coefficients), `T1`/`T2` (additional
//! half-integer maps), and the direction-convex selections `S1`, `T3`, `T5`.
//! Harmonic sets: `T4` (half-integer, convex in the real direction) and `T6`
//! (convex in the imaginary direction). `PROOF_CV1`/`PROOF_CVI` hold every
//! shear `φ ± ω` case with `ω = ±z` examined in the classification proofs.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::analytic::{parse_expr, AnalyticExpr};
use crate::numkernel::Rational;
use crate::shear::{shear_imag, shear_real, Axis, HarmonicMap, ShearError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "S_Z")]
    SZ,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    S1,
    #[serde(rename = "PROOF_CV1")]
    ProofCv1,
    #[serde(rename = "PROOF_CVI")]
    ProofCvi,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::SZ,
        Family::T1,
        Family::T2,
        Family::T3,
        Family::T4,
        Family::T5,
        Family::T6,
        Family::S1,
        Family::ProofCv1,
        Family::ProofCvi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SZ => "S_Z",
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
            Family::T4 => "T4",
            Family::T5 => "T5",
            Family::T6 => "T6",
            Family::S1 => "S1",
            Family::ProofCv1 => "PROOF_CV1",
            Family::ProofCvi => "PROOF_CVI",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// `a + b√3` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub rational: Rational,
    pub sqrt3: Rational,
}

impl QuadSurd {
    pub fn rat(n: i64, d: i64) -> Self {
        Self { rational: Rational::new(n.into(), d.into()), sqrt3: Rational::from_integer(0.into()) }
    }

    pub fn surd(n: i64, d: i64) -> Self {
        Self { rational: Rational::from_integer(0.into()), sqrt3: Rational::new(n.into(), d.into()) }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.rational.to_f64().unwrap_or(f64::NAN) + self.sqrt3.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Zero;
        match (self.rational.is_zero(), self.sqrt3.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*sqrt3", self.sqrt3),
            (false, false) => write!(f, "{}+{}*sqrt3", self.rational, self.sqrt3),
        }
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// Rays `(x0, y0) + t·(dx, dy)`, `t ≥ 0`; four params per ray.
    SlitLines,
    /// `a·u + b·v² + c = 0`; params `(a, b, c)`.
    Parabola,
    /// Closed curve with cusps; params are cusp coordinates `(x, y)` pairs.
    Cusped,
    Curve,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryDescriptor {
    pub kind: BoundaryKind,
    pub params: Vec<QuadSurd>,
}

/// Expected classification. `None` means the claim is not made and is not checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagSet {
    pub integer_coeffs: bool,
    pub half_integer_coeffs: bool,
    pub cv_real: Option<bool>,
    pub cv_imag: Option<bool>,
    pub starlike: Option<bool>,
    pub boundary: Option<BoundaryDescriptor>,
}

/// How a proof-case entry is produced: the shear of `conformal` with `ω = omega_sign·z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShearSource {
    pub axis: Axis,
    pub conformal_id: &'static str,
    pub conformal: AnalyticExpr,
    pub omega_sign: i8,
}

impl ShearSource {
    pub fn omega(&self) -> AnalyticExpr {
        omega_pm(self.omega_sign)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub family: Family,
    pub description: String,
    /// Analytic part; `None` only for proof cases without a closed form.
    pub h: Option<AnalyticExpr>,
    pub g: Option<AnalyticExpr>,
    pub omega: Option<AnalyticExpr>,
    pub source: Option<ShearSource>,
    pub expected: FlagSet,
}

impl CatalogEntry {
    pub fn is_harmonic(&self) -> bool {
        self.omega.is_some()
    }

    /// The conformal map itself for conformal entries.
    pub fn conformal(&self) -> Option<&AnalyticExpr> {
        if self.is_harmonic() {
            None
        } else {
            self.h.as_ref()
        }
    }

    /// Builds the harmonic map with series through `z^order`.
    pub fn map(&self, order: usize) -> Result<HarmonicMap, ShearError> {
        if let Some(src) = &self.source {
            let omega = src.omega();
            let map = match src.axis {
                Axis::Real => shear_real(&src.conformal, &omega, order)?,
                Axis::Imag => shear_imag(&src.conformal, &omega, order)?,
            };
            return match (&self.h, &self.g) {
                (Some(h), Some(g)) => map.with_closed_forms(h.clone(), g.clone()),
                _ => Ok(map),
            };
        }
        let h = self.h.clone().expect("non-proof entries carry h");
        let g = self.g.clone().unwrap_or_else(AnalyticExpr::zero);
        let omega = self.omega.clone().unwrap_or_else(AnalyticExpr::zero);
        HarmonicMap::from_exprs(h, g, omega, order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
}

fn e(src: &str) -> AnalyticExpr {
    parse_expr(src).unwrap_or_else(|err| panic!("catalog expression {src:?}: {err}"))
}

fn omega_pm(sign: i8) -> AnalyticExpr {
    if sign > 0 {
        e("z")
    } else {
        e("-z")
    }
}

/// (id, expression, display text)
const CONFORMAL: &[(&str, &str, &str)] = &[
    ("identity", "z", "z"),
    ("z_over_1mz", "z/(1-z)", "z/(1-z)"),
    ("z_over_1pz", "z/(1+z)", "z/(1+z)"),
    ("z_over_1mz2", "z/(1-z^2)", "z/(1-z^2)"),
    ("z_over_1pz2", "z/(1+z^2)", "z/(1+z^2)"),
    ("koebe", "z/(1-z)^2", "z/(1-z)^2"),
    ("koebe_neg", "z/(1+z)^2", "z/(1+z)^2"),
    ("z_over_1mzpz2", "z/(1-z+z^2)", "z/(1-z+z^2)"),
    ("z_over_1pzpz2", "z/(1+z+z^2)", "z/(1+z+z^2)"),
    ("phi1", "z - z^2/2", "z - z^2/2"),
    ("psi1", "z + z^2/2", "z + z^2/2"),
    ("phi2", "z(2-z)/(2(1-z))", "z(2-z)/(2(1-z))"),
    ("psi2", "z(2+z)/(2(1+z))", "z(2+z)/(2(1+z))"),
    ("phi3", "z(2-z^2)/(2(1-z^2))", "z(2-z^2)/(2(1-z^2))"),
    ("psi3", "z(2+z^2)/(2(1+z^2))", "z(2+z^2)/(2(1+z^2))"),
    ("phi4", "z(2-z)/(2(1-z^2))", "z(2-z)/(2(1-z^2))"),
    ("psi4", "z(2+z)/(2(1-z^2))", "z(2+z)/(2(1-z^2))"),
    ("phi5", "z(2-z)/(2(1-z)^2)", "z(2-z)/(2(1-z)^2)"),
    ("psi5", "z(2+z)/(2(1+z)^2)", "z(2+z)/(2(1+z)^2)"),
    ("f_plus", "z(2-z+z^2)/(2(1-z+z^2))", "z(2-z+z^2)/(2(1-z+z^2))"),
    ("f_minus", "z(2+z+z^2)/(2(1+z+z^2))", "z(2+z+z^2)/(2(1+z+z^2))"),
];

fn conformal_def(id: &str) -> (&'static str, &'static str, &'static str) {
    *CONFORMAL.iter().find(|c| c.0 == id).unwrap_or_else(|| panic!("no conformal {id}"))
}

const S_Z: [&str; 9] = [
    "identity",
    "z_over_1mz",
    "z_over_1pz",
    "z_over_1mz2",
    "z_over_1pz2",
    "koebe",
    "koebe_neg",
    "z_over_1mzpz2",
    "z_over_1pzpz2",
];
const T1: [&str; 10] =
    ["phi1", "psi1", "phi2", "psi2", "phi3", "psi3", "phi4", "psi4", "phi5", "psi5"];
const T2: [&str; 2] = ["f_plus", "f_minus"];
const S1: [&str; 8] = [
    "identity",
    "z_over_1mz",
    "z_over_1pz",
    "z_over_1pz2",
    "koebe",
    "koebe_neg",
    "z_over_1mzpz2",
    "z_over_1pzpz2",
];
const T3: [&str; 7] = ["phi1", "psi1", "phi2", "psi2", "psi3", "phi5", "psi5"];
const T5: [&str; 9] = [
    "identity",
    "z_over_1mz",
    "z_over_1pz",
    "z_over_1mz2",
    "phi2",
    "psi2",
    "phi3",
    "phi4",
    "psi4",
];

/// Conformal maps convex in the real / imaginary direction among S_Z ∪ T1 ∪ T2.
const CV_REAL: [&str; 15] = [
    "identity",
    "z_over_1mz",
    "z_over_1pz",
    "z_over_1pz2",
    "koebe",
    "koebe_neg",
    "z_over_1mzpz2",
    "z_over_1pzpz2",
    "phi1",
    "psi1",
    "phi2",
    "psi2",
    "psi3",
    "phi5",
    "psi5",
];
const CV_IMAG: [&str; 9] = [
    "identity",
    "z_over_1mz",
    "z_over_1pz",
    "z_over_1mz2",
    "phi2",
    "psi2",
    "phi3",
    "phi4",
    "psi4",
];

/// Closed forms of `h` for the real-direction shears, `(ω = z, ω = −z)` per φ-shape.
const CV1_CASES: [(&str, Option<&str>, Option<&str>); 15] = [
    ("identity", Some("-log(1-z)"), Some("log(1+z)")),
    (
        "z_over_1mz",
        Some("(1/(1-z)^2 - 1)/2"),
        Some("z/(2(1-z)) + (log(1+z) - log(1-z))/4"),
    ),
    (
        "z_over_1pz",
        Some("z/(2(1+z)) + (log(1+z) - log(1-z))/4"),
        Some("(z/(1+z) + z/(1+z)^2)/2"),
    ),
    (
        "z_over_1pz2",
        Some("z^2/(2(1+z^2)) + z/(2(1+z^2)) + (log(1+iz) - log(1-iz))/(4i)"),
        Some("-z^2/(2(1+z^2)) + z/(2(1+z^2)) + (log(1+iz) - log(1-iz))/(4i)"),
    ),
    ("koebe", Some("(z - z^2/2 + z^3/6)/(1-z)^3"), Some("z(2-z)/(2(1-z)^2)")),
    ("koebe_neg", Some("z(2+z)/(2(1+z)^2)"), Some("(z + z^2/2 + z^3/6)/(1+z)^3")),
    ("z_over_1mzpz2", None, None),
    ("z_over_1pzpz2", None, None),
    ("phi1", Some("z"), Some("2log(1+z) - z")),
    ("psi1", Some("-2log(1-z) - z"), Some("z")),
    (
        "phi2",
        Some("-1/2 log(1-z) + 1/(4(1-z)^2) - 1/4"),
        Some("5/8 log(1+z) - 1/8 log(1-z) + 1/(4(1-z)) - 1/4"),
    ),
    (
        "psi2",
        Some("1/8 log(1+z) - 5/8 log(1-z) + z/(4(1+z))"),
        Some("1/2 log(1+z) - (1/(1+z)^2 - 1)/4"),
    ),
    ("psi3", None, None),
    (
        "phi5",
        Some("(1/(1-z)^3 - 1)/3"),
        Some("1/(4(1-z)^2) + 1/(4(1-z)) - 1/2 + (log(1+z) - log(1-z))/8"),
    ),
    (
        "psi5",
        Some("-1/(4(1+z)^2) - 1/(4(1+z)) + 1/2 + (log(1+z) - log(1-z))/8"),
        Some("(1 - 1/(1+z)^3)/3"),
    ),
];

/// Closed forms of `h` for the imaginary-direction shears.
const CVI_CASES: [(&str, Option<&str>, Option<&str>); 9] = [
    ("identity", Some("log(1+z)"), Some("-log(1-z)")),
    (
        "z_over_1mz",
        Some("z/(2(1-z)) + (log(1+z) - log(1-z))/4"),
        Some("(1/(1-z)^2 - 1)/2"),
    ),
    (
        "z_over_1pz",
        Some("-1/(2(1+z)^2) + 1/2"),
        Some("z/(2(1+z)) + (log(1+z) - log(1-z))/4"),
    ),
    ("z_over_1mz2", None, None),
    (
        "phi2",
        Some("5/8 log(1+z) - 1/8 log(1-z) + z/(4(1-z))"),
        Some("1/(4(1-z)^2) - 1/2 log(1-z) - 1/4"),
    ),
    (
        "psi2",
        Some("-1/(4(1+z)^2) + 1/2 log(1+z) + 1/4"),
        Some("1/8 log(1+z) - 5/8 log(1-z) + z/(4(1+z))"),
    ),
    (
        "phi3",
        Some("-1/(8(1+z)^2) + 1/(8(1-z)) - log(1-z)/16 + 9/16 log(1+z)"),
        Some("1/(8(1-z)^2) - 1/(8(1+z)) + log(1+z)/16 - 9/16 log(1-z)"),
    ),
    (
        "phi4",
        Some("(log(1+z) - log(1-z))/16 + 1/(8(1-z)) - 3/(8(1+z)^2) + 1/4"),
        Some("3(log(1+z) - log(1-z))/16 + 1/(8(1-z)^2) - 3/(8(1+z)) + 1/4"),
    ),
    (
        "psi4",
        Some("3(log(1+z) - log(1-z))/16 - 1/(8(1+z)^2) + 3/(8(1-z)) - 1/4"),
        Some("(log(1+z) - log(1-z))/16 + 3/(8(1-z)^2) - 1/(8(1+z)) - 1/4"),
    ),
];

/// Proof cases whose shear has half-integer coefficients: `(conformal id, ω sign)`.
const HALF_INTEGER_CV1: [(&str, i8); 6] = [
    ("z_over_1mz", 1),
    ("z_over_1pz", -1),
    ("koebe", -1),
    ("koebe_neg", 1),
    ("phi1", 1),
    ("psi1", -1),
];
const HALF_INTEGER_CVI: [(&str, i8); 2] = [("z_over_1mz", -1), ("z_over_1pz", 1)];

fn ray(x0: QuadSurd, y0: QuadSurd, dx: i64, dy: i64) -> [QuadSurd; 4] {
    [x0, y0, QuadSurd::rat(dx, 1), QuadSurd::rat(dy, 1)]
}

fn slits(rays: &[[QuadSurd; 4]]) -> Option<BoundaryDescriptor> {
    Some(BoundaryDescriptor {
        kind: BoundaryKind::SlitLines,
        params: rays.iter().flat_map(|r| r.iter().cloned()).collect(),
    })
}

fn boundary_of(id: &str) -> Option<BoundaryDescriptor> {
    let r = QuadSurd::rat;
    let s = QuadSurd::surd;
    match id {
        "z_over_1pz2" => slits(&[ray(r(1, 2), r(0, 1), 1, 0), ray(r(-1, 2), r(0, 1), -1, 0)]),
        "z_over_1mz2" => slits(&[ray(r(0, 1), r(1, 2), 0, 1), ray(r(0, 1), r(-1, 2), 0, -1)]),
        "koebe" => slits(&[ray(r(-1, 4), r(0, 1), -1, 0)]),
        "koebe_neg" => slits(&[ray(r(1, 4), r(0, 1), 1, 0)]),
        "z_over_1mzpz2" => slits(&[ray(r(-1, 3), r(0, 1), -1, 0), ray(r(1, 1), r(0, 1), 1, 0)]),
        "z_over_1pzpz2" => slits(&[ray(r(1, 3), r(0, 1), 1, 0), ray(r(-1, 1), r(0, 1), -1, 0)]),
        "phi4" => slits(&[ray(r(1, 4), s(1, 4), 0, 1), ray(r(1, 4), s(-1, 4), 0, -1)]),
        "psi4" => slits(&[ray(r(-1, 4), s(1, 4), 0, 1), ray(r(-1, 4), s(-1, 4), 0, -1)]),
        "phi5" => Some(BoundaryDescriptor {
            kind: BoundaryKind::Parabola,
            params: vec![r(8, 1), r(16, 1), r(3, 1)],
        }),
        // ψ₅ = −φ₅(−z): (u, v) ↦ (−u, −v)
        "psi5" => Some(BoundaryDescriptor {
            kind: BoundaryKind::Parabola,
            params: vec![r(-8, 1), r(16, 1), r(3, 1)],
        }),
        // boundary cos θ/2 + i(sin θ/2 + 1/(4 sin θ))
        "phi3" => Some(BoundaryDescriptor { kind: BoundaryKind::Curve, params: Vec::new() }),
        _ => None,
    }
}

fn conformal_entry(family: Family, base: &str, prefix: &str) -> CatalogEntry {
    let (id, src, text) = conformal_def(base);
    let integer = S_Z.contains(&id);
    let known = S_Z.contains(&id) || T1.contains(&id) || T2.contains(&id);
    let cv = |list: &[&str]| known.then(|| list.contains(&id));
    CatalogEntry {
        id: format!("{prefix}{id}"),
        family,
        description: text.to_string(),
        h: Some(e(src)),
        g: Some(AnalyticExpr::zero()),
        omega: None,
        source: None,
        expected: FlagSet {
            integer_coeffs: integer,
            half_integer_coeffs: true,
            cv_real: cv(&CV_REAL),
            cv_imag: cv(&CV_IMAG),
            starlike: integer.then_some(true),
            boundary: boundary_of(id),
        },
    }
}

/// `Re(a) + i·Im(b) = ½(a+b) + conj(½(a−b))`.
fn re_im(
    id: &str,
    family: Family,
    a: &str,
    b: &str,
    omega_sign: i8,
    cv_imag: bool,
    starlike: Option<bool>,
) -> CatalogEntry {
    let (ea, eb) = (e(a), e(b));
    let half = crate::numkernel::GaussRational::from_ratio(1, 2);
    CatalogEntry {
        id: id.to_string(),
        family,
        description: format!("Re({a}) + i Im({b})"),
        h: Some(ea.add(&eb).scale(&half)),
        g: Some(ea.sub(&eb).scale(&half)),
        omega: Some(omega_pm(omega_sign)),
        source: None,
        expected: FlagSet {
            integer_coeffs: false,
            half_integer_coeffs: true,
            cv_real: Some(true),
            cv_imag: Some(cv_imag),
            starlike,
            boundary: None,
        },
    }
}

fn z_plus_conj(id: &str, sign: i8) -> CatalogEntry {
    let (g, description, boundary) = if sign > 0 {
        (
            "z^2/2",
            "z + conj(z^2/2)",
            // cusps at 3/2 and −3/4 ± (3√3/4) i
            Some(BoundaryDescriptor {
                kind: BoundaryKind::Cusped,
                params: vec![
                    QuadSurd::rat(3, 2),
                    QuadSurd::rat(0, 1),
                    QuadSurd::rat(-3, 4),
                    QuadSurd::surd(3, 4),
                    QuadSurd::rat(-3, 4),
                    QuadSurd::surd(-3, 4),
                ],
            }),
        )
    } else {
        (
            "-z^2/2",
            "z - conj(z^2/2)",
            Some(BoundaryDescriptor {
                kind: BoundaryKind::Cusped,
                params: vec![
                    QuadSurd::rat(-3, 2),
                    QuadSurd::rat(0, 1),
                    QuadSurd::rat(3, 4),
                    QuadSurd::surd(3, 4),
                    QuadSurd::rat(3, 4),
                    QuadSurd::surd(-3, 4),
                ],
            }),
        )
    };
    CatalogEntry {
        id: id.to_string(),
        family: Family::T4,
        description: description.to_string(),
        h: Some(e("z")),
        g: Some(e(g)),
        omega: Some(omega_pm(sign)),
        source: None,
        expected: FlagSet {
            integer_coeffs: false,
            half_integer_coeffs: true,
            cv_real: Some(true),
            cv_imag: Some(false),
            starlike: None,
            boundary,
        },
    }
}

fn proof_entry(
    family: Family,
    index: usize,
    axis: Axis,
    base: &'static str,
    sign: i8,
    h_src: Option<&str>,
    half_integer: &[(&str, i8)],
) -> CatalogEntry {
    let (_, src, text) = conformal_def(base);
    let conformal = e(src);
    let (h, g) = match h_src {
        Some(hs) => {
            let h = e(hs);
            let g = match axis {
                Axis::Real => h.sub(&conformal),
                Axis::Imag => conformal.sub(&h),
            };
            (Some(h), Some(g))
        }
        None => (None, None),
    };
    let prefix = if axis == Axis::Real { "cv1" } else { "cvi" };
    let sign_text = if sign > 0 { "z" } else { "-z" };
    CatalogEntry {
        id: format!("{prefix}_{index:02}"),
        family,
        description: format!("shear {axis} of {text} with omega = {sign_text}"),
        h,
        g,
        omega: Some(omega_pm(sign)),
        expected: FlagSet {
            integer_coeffs: false,
            half_integer_coeffs: half_integer.contains(&(base, sign)),
            cv_real: (axis == Axis::Real).then_some(true),
            cv_imag: (axis == Axis::Imag).then_some(true),
            starlike: None,
            boundary: None,
        },
        source: Some(ShearSource { axis, conformal_id: base, conformal, omega_sign: sign }),
    }
}

fn build() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    out.extend(S_Z.iter().map(|id| conformal_entry(Family::SZ, id, "")));
    out.extend(T1.iter().map(|id| conformal_entry(Family::T1, id, "")));
    out.extend(T2.iter().map(|id| conformal_entry(Family::T2, id, "")));
    out.extend(S1.iter().map(|id| conformal_entry(Family::S1, id, "s1.")));
    out.extend(T3.iter().map(|id| conformal_entry(Family::T3, id, "t3.")));
    out.extend(T5.iter().map(|id| conformal_entry(Family::T5, id, "t5.")));

    let (k, l) = ("z/(1-z)^2", "z/(1-z)");
    let (kn, ln) = ("z/(1+z)^2", "z/(1+z)");
    out.push(re_im("f3_cv1", Family::T4, k, l, 1, false, Some(false)));
    out.push(re_im("f6_cv1", Family::T4, kn, ln, -1, false, None));
    out.push(re_im("f9_cv1", Family::T4, l, k, -1, true, None));
    out.push(re_im("f11_cv1", Family::T4, ln, kn, 1, true, None));
    out.push(z_plus_conj("f17_cv1", 1));
    out.push(z_plus_conj("f20_cv1", -1));
    out.push(re_im("f4_cvi", Family::T6, l, k, -1, true, None));
    out.push(re_im("f5_cvi", Family::T6, ln, kn, 1, true, None));

    for (i, (base, hp, hm)) in CV1_CASES.iter().enumerate() {
        for (j, (sign, h)) in [(1, hp), (-1, hm)].into_iter().enumerate() {
            out.push(proof_entry(
                Family::ProofCv1,
                2 * i + j + 1,
                Axis::Real,
                base,
                sign,
                *h,
                &HALF_INTEGER_CV1,
            ));
        }
    }
    for (i, (base, hp, hm)) in CVI_CASES.iter().enumerate() {
        for (j, (sign, h)) in [(1, hp), (-1, hm)].into_iter().enumerate() {
            out.push(proof_entry(
                Family::ProofCvi,
                2 * i + j + 1,
                Axis::Imag,
                base,
                sign,
                *h,
                &HALF_INTEGER_CVI,
            ));
        }
    }
    out
}

/// Shared, immutable catalog.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn catalog_build() -> Vec<CatalogEntry> {
    catalog().to_vec()
}

/// Alternative names accepted by [`catalog_lookup`].
pub const ALIASES: [(&str, &str); 1] = [("harmonic_koebe", "cv1_09")];

pub fn catalog_lookup(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    let id = ALIASES.iter().find(|(a, _)| *a == id).map_or(id, |(_, target)| target);
    catalog()
        .iter()
        .find(|entry| entry.id == id)
        .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
}

pub fn family_members(family: Family) -> impl Iterator<Item = &'static CatalogEntry> {
    catalog().iter().filter(move |e| e.family == family)
}
