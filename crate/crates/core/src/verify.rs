//! Theorem tables: recompute every classification the catalog records and compare.
//!
//! Reports contain no timings and print floats with fixed formatting, so a rerun
//! with the same configuration serializes to the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::analytic::AnalyticExpr;
use crate::catalog::{catalog, family_members, CatalogEntry, Family};
use crate::classify::{b2_bound_check, classify_harmonic, CoeffClass};
use crate::geomtest::{
    jacobian_min, m_theta_check, probe_report, rz_search, starlike_derivative, u_class_margin, Grid,
    DEFAULT_PARAM_STEPS, DEFAULT_PROBE_SAMPLES,
};
use crate::numkernel::DEFAULT_ORDER;
use crate::shear::{dilatation_check, Axis, HarmonicMap};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Series order N.
    pub order: usize,
    /// Number of grid radii.
    pub grid_radii: usize,
    pub grid_angles: usize,
    pub tol: f64,
    pub r_max: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, grid_radii: 64, grid_angles: 256, tol: 1e-9, r_max: 0.999 }
    }
}

impl VerifyConfig {
    pub fn grid(&self) -> Result<Grid, VerifyError> {
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(VerifyError::Config(format!("r_max must lie in (0, 1), got {}", self.r_max)));
        }
        Grid::uniform(self.grid_radii, self.grid_angles, self.r_max)
            .map_err(|e| VerifyError::Config(e.to_string()))
    }

    fn validate(&self) -> Result<Grid, VerifyError> {
        if self.order < 2 {
            return Err(VerifyError::Config("order must be at least 2".into()));
        }
        if !(self.tol >= 0.0) {
            return Err(VerifyError::Config("tol must be nonnegative".into()));
        }
        self.grid()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{id}: {message}")]
    Case { id: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    T31,
    T32,
    T41,
    T42,
    #[serde(rename = "LEM42")]
    Lem42,
    #[serde(rename = "REMARK")]
    Remark,
}

impl Theorem {
    pub const ALL: [Theorem; 6] =
        [Theorem::T31, Theorem::T32, Theorem::T41, Theorem::T42, Theorem::Lem42, Theorem::Remark];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T31 => "T31",
            Theorem::T32 => "T32",
            Theorem::T41 => "T41",
            Theorem::T42 => "T42",
            Theorem::Lem42 => "LEM42",
            Theorem::Remark => "REMARK",
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem {s:?} (expected one of T31, T32, T41, T42, LEM42, REMARK)"))
    }
}

/// One entry or construction. Only keys present in `expected` take part in `match`;
/// the rest of `computed` is evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub id: String,
    pub computed: BTreeMap<String, String>,
    pub expected: BTreeMap<String, String>,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Aggregate statement over several rows (counts, set equalities).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub passed: bool,
}

/// A claim recorded for transparency but not tested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Asserted {
    pub claim: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub theorem: Theorem,
    pub config: VerifyConfig,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub asserted: Vec<Asserted>,
    pub summary: Summary,
}

impl VerifyReport {
    /// Every row matches and every check passes.
    pub fn passed(&self) -> bool {
        self.summary.matched == self.summary.total && self.checks.iter().all(|c| c.passed)
    }
}

struct RowBuilder {
    id: String,
    computed: BTreeMap<String, String>,
    expected: BTreeMap<String, String>,
}

impl RowBuilder {
    fn new(id: &str) -> Self {
        Self { id: id.to_string(), computed: BTreeMap::new(), expected: BTreeMap::new() }
    }

    fn computed(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.computed.insert(key.to_string(), value.to_string());
        self
    }

    fn expected(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.expected.insert(key.to_string(), value.to_string());
        self
    }

    fn finish(self) -> Row {
        let matched = self.expected.iter().all(|(k, v)| self.computed.get(k) == Some(v));
        Row { id: self.id, computed: self.computed, expected: self.expected, matched }
    }
}

fn check(name: &str, computed: impl ToString, expected: impl ToString) -> Check {
    let (computed, expected) = (computed.to_string(), expected.to_string());
    Check { name: name.into(), passed: computed == expected, computed, expected }
}

fn case_err(id: &str, e: impl std::fmt::Display) -> VerifyError {
    VerifyError::Case { id: id.to_string(), message: e.to_string() }
}

fn sci(v: f64) -> String {
    format!("{v:.6e}")
}

/// Finest class holding both parts.
fn map_class(f: &HarmonicMap, upto: usize) -> CoeffClass {
    let (h, g) = classify_harmonic(f, upto);
    match (h.class, g.class) {
        (CoeffClass::Neither, _) | (_, CoeffClass::Neither) => CoeffClass::Neither,
        (CoeffClass::HalfInteger, _) | (_, CoeffClass::HalfInteger) => CoeffClass::HalfInteger,
        _ => CoeffClass::Integer,
    }
}

fn expected_class(e: &CatalogEntry) -> CoeffClass {
    if e.expected.integer_coeffs {
        CoeffClass::Integer
    } else if e.expected.half_integer_coeffs {
        CoeffClass::HalfInteger
    } else {
        CoeffClass::Neither
    }
}

/// `"true"` with a certificate for `conformal`, `"false"` when the probe on `f`
/// finds a disconnected line section, `"undetermined"` otherwise.
fn direction_flag(conformal: Option<&AnalyticExpr>, f: &HarmonicMap, axis: Axis, grid: &Grid) -> (String, String) {
    if let Some(c) = conformal.and_then(|phi| rz_search(phi, axis, grid, DEFAULT_PARAM_STEPS)) {
        let p = c.params.expect("search certificates carry parameters");
        return ("true".into(), format!("rz mu={:.6} nu={:.6} margin={}", p.mu, p.nu, sci(c.margin)));
    }
    let report = probe_report(f, axis, grid.r_max(), 64, DEFAULT_PROBE_SAMPLES);
    let flag = if report.convex() { "undetermined" } else { "false" };
    (flag.into(), format!("probe crossings={}", report.max_crossings))
}

/// Conformal map whose direction convexity is equivalent to that of the harmonic map:
/// `h − g` for the real direction, `h + g` for the imaginary one.
fn associated_conformal(e: &CatalogEntry, axis: Axis) -> Option<AnalyticExpr> {
    if let Some(src) = &e.source {
        return (src.axis == axis).then(|| src.conformal.clone());
    }
    let (h, g) = (e.h.as_ref()?, e.g.as_ref()?);
    Some(match axis {
        Axis::Real => h.sub(g),
        Axis::Imag => h.add(g),
    })
}

fn direction_columns(row: &mut RowBuilder, e: &CatalogEntry, f: &HarmonicMap, grid: &Grid) {
    for (axis, want, key) in
        [(Axis::Real, e.expected.cv_real, "cv_real"), (Axis::Imag, e.expected.cv_imag, "cv_imag")]
    {
        let Some(want) = want else { continue };
        let conformal = associated_conformal(e, axis);
        let (flag, evidence) = direction_flag(conformal.as_ref(), f, axis, grid);
        row.computed(key, flag).computed(&format!("{key}_evidence"), evidence).expected(key, want);
    }
}

fn sense_preserving(f: &HarmonicMap, grid: &Grid, tol: f64) -> Result<(bool, f64), VerifyError> {
    let c = jacobian_min(f, grid).map_err(|e| case_err("jacobian", e))?;
    Ok((c.margin > -tol && c.margin.is_finite(), c.margin))
}

fn class_row(e: &CatalogEntry, cfg: &VerifyConfig, grid: &Grid, directions: bool) -> Result<Row, VerifyError> {
    let f = e.map(cfg.order).map_err(|err| case_err(&e.id, err))?;
    let mut row = RowBuilder::new(&e.id);
    row.computed("class", map_class(&f, cfg.order)).expected("class", expected_class(e));
    if e.is_harmonic() {
        let (ok, margin) = sense_preserving(&f, grid, cfg.tol)?;
        row.computed("sense_preserving", ok)
            .computed("jacobian_min", sci(margin))
            .expected("sense_preserving", true)
            .computed("dilatation_identity", dilatation_check(&f))
            .expected("dilatation_identity", true)
            .computed("b2_abs_sq", b2_bound_check(&f));
    }
    if directions {
        direction_columns(&mut row, e, &f, grid);
    }
    Ok(row.finish())
}

fn same_series(a: &HarmonicMap, b: &HarmonicMap) -> bool {
    a.h_series() == b.h_series() && a.g_series() == b.g_series()
}

/// Shear rows plus the ids of the target-family entries matched by half-integer outputs.
fn shear_rows(
    proofs: Family,
    targets: Family,
    cfg: &VerifyConfig,
) -> Result<(Vec<Row>, Vec<String>, BTreeSet<String>), VerifyError> {
    let target_maps = family_members(targets)
        .map(|t| Ok((t.id.clone(), t.map(cfg.order).map_err(|err| case_err(&t.id, err))?)))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let mut rows = Vec::new();
    let mut half = Vec::new();
    let mut matched = BTreeSet::new();
    for e in family_members(proofs) {
        let f = e.map(cfg.order).map_err(|err| case_err(&e.id, err))?;
        let class = map_class(&f, cfg.order);
        let mut row = RowBuilder::new(&e.id);
        row.computed("class", class)
            .computed("half_integer", class.is_half_integer())
            .expected("half_integer", e.expected.half_integer_coeffs)
            .computed("dilatation_identity", dilatation_check(&f))
            .expected("dilatation_identity", true);
        if class.is_half_integer() {
            half.push(e.id.clone());
            let hit = target_maps.iter().find(|(_, t)| same_series(&f, t)).map(|(id, _)| id.clone());
            if let Some(id) = &hit {
                matched.insert(id.clone());
            }
            row.computed("equals", hit.unwrap_or_else(|| "none".into()));
        }
        rows.push(row.finish());
    }
    Ok((rows, half, matched))
}

fn ids(family: Family) -> BTreeSet<String> {
    family_members(family).map(|e| e.id.clone()).collect()
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(",")
}

/// Number of distinct maps (compared by exact series) among the given families.
fn distinct_maps(families: &[Family], order: usize) -> Result<usize, VerifyError> {
    let mut seen: Vec<HarmonicMap> = Vec::new();
    for fam in families {
        for e in family_members(*fam) {
            let f = e.map(order).map_err(|err| case_err(&e.id, err))?;
            if !seen.iter().any(|s| same_series(s, &f)) {
                seen.push(f);
            }
        }
    }
    Ok(seen.len())
}

fn starlike_flag(f: &HarmonicMap) -> Result<(String, String), VerifyError> {
    let (a, b) = (-FRAC_PI_2 + 0.1, FRAC_PI_2 - 0.1);
    let mut worst = (f64::INFINITY, 0.0);
    for k in 0..32 {
        let t = a + (b - a) * k as f64 / 31.0;
        let v = starlike_derivative(f, t, 0.9999).map_err(|e| case_err("starlike", e))?;
        if v < worst.0 {
            worst = (v, t);
        }
    }
    let flag = if worst.0 < 0.0 { "false" } else { "not_refuted" };
    Ok((flag.into(), format!("min d/dt arg f = {} at t = {:.6}", sci(worst.0), worst.1)))
}

pub fn run(theorem: Theorem, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let grid = cfg.validate()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut asserted = Vec::new();
    match theorem {
        Theorem::T31 => {
            for e in family_members(Family::SZ) {
                let mut row = RowBuilder::new(&e.id);
                let f = e.map(cfg.order).map_err(|err| case_err(&e.id, err))?;
                let u = u_class_margin(e.conformal().expect("conformal"), &grid)
                    .map_err(|err| case_err(&e.id, err))?;
                row.computed("class", map_class(&f, cfg.order))
                    .expected("class", expected_class(e))
                    .computed("u_class", u.margin >= -cfg.tol)
                    .computed("u_class_margin", sci(u.margin))
                    .expected("u_class", true);
                rows.push(row.finish());
            }
            checks.push(check("|S_Z|", ids(Family::SZ).len(), 9));
            checks.push(check("|T1 u T2|", distinct_maps(&[Family::T1, Family::T2], cfg.order)?, 12));
            asserted.push(Asserted {
                claim: "no other normalized univalent map has integer coefficients".into(),
                reason: "classification statement; only the listed members are checked".into(),
            });
        }
        Theorem::T32 => {
            for e in family_members(Family::SZ) {
                rows.push(class_row(e, cfg, &grid, true)?);
            }
        }
        Theorem::Lem42 => {
            for e in family_members(Family::T1) {
                rows.push(class_row(e, cfg, &grid, true)?);
            }
        }
        Theorem::T41 => {
            for fam in [Family::S1, Family::T3, Family::T4] {
                for e in family_members(fam) {
                    rows.push(class_row(e, cfg, &grid, true)?);
                }
            }
            let (shear, half, matched) = shear_rows(Family::ProofCv1, Family::T4, cfg)?;
            rows.extend(shear);
            checks.push(check("shear_real cases", family_members(Family::ProofCv1).count(), 30));
            checks.push(check("half-integer shear_real outputs", half.len(), 6));
            checks.push(check("half-integer outputs equal T4 members", join(&matched), join(&ids(Family::T4))));
            checks.push(check(
                "|S1 u T3 u T4|",
                distinct_maps(&[Family::S1, Family::T3, Family::T4], cfg.order)?,
                21,
            ));
            asserted.push(Asserted {
                claim: "every shear output is univalent and convex in the real direction".into(),
                reason: "follows from the shear theorem; univalence is not sampled".into(),
            });
        }
        Theorem::T42 => {
            let (shear, half, matched) = shear_rows(Family::ProofCvi, Family::T6, cfg)?;
            rows.extend(shear);
            checks.push(check("shear_imag cases", family_members(Family::ProofCvi).count(), 18));
            checks.push(check("half-integer shear_imag outputs", half.len(), 2));
            checks.push(check("half-integer outputs equal T6 members", join(&matched), join(&ids(Family::T6))));
            checks.push(check("|T5 u T6|", distinct_maps(&[Family::T5, Family::T6], cfg.order)?, 11));
            asserted.push(Asserted {
                claim: "every shear output is univalent and convex in the imaginary direction".into(),
                reason: "follows from the shear theorem; univalence is not sampled".into(),
            });
        }
        Theorem::Remark => {
            let lookup = |id: &str| {
                catalog().iter().find(|e| e.id == id).expect("catalog id").map(cfg.order).map_err(|e| case_err(id, e))
            };
            let f3 = lookup("f3_cv1")?;
            let (flag, evidence) = starlike_flag(&f3)?;
            let m0 = m_theta_check(&f3, 0.0, &grid).map_err(|e| case_err("f3_cv1", e))?;
            let mut row = RowBuilder::new("f3_cv1");
            row.computed("starlike", flag)
                .computed("starlike_evidence", evidence)
                .expected("starlike", false)
                .computed("m_theta_0", m0.margin > -cfg.tol)
                .computed("m_theta_0_margin", sci(m0.margin))
                .expected("m_theta_0", true);
            rows.push(row.finish());

            let f9 = lookup("f9_cv1")?;
            let mpi = m_theta_check(&f9, PI, &grid).map_err(|e| case_err("f9_cv1", e))?;
            let mut row = RowBuilder::new("f9_cv1");
            row.computed("m_theta_pi", mpi.margin > -cfg.tol)
                .computed("m_theta_pi_margin", sci(mpi.margin))
                .expected("m_theta_pi", true);
            rows.push(row.finish());

            for id in ["f_minus", "f_plus"] {
                let e = catalog().iter().find(|e| e.id == id).expect("catalog id");
                let u = u_class_margin(e.conformal().expect("conformal"), &grid)
                    .map_err(|err| case_err(id, err))?;
                let mut row = RowBuilder::new(id);
                row.computed("u_class", u.margin >= -cfg.tol)
                    .computed("u_class_margin", sci(u.margin))
                    .expected("u_class", false);
                rows.push(row.finish());
            }
            asserted.push(Asserted {
                claim: "f3 is univalent although not starlike".into(),
                reason: "univalence is not sampled".into(),
            });
        }
    }
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = Summary { total: rows.len(), matched: rows.iter().filter(|r| r.matched).count() };
    Ok(VerifyReport { schema: SCHEMA, theorem, config: cfg.clone(), rows, checks, asserted, summary })
}
