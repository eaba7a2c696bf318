//! `harmonic-atlas`: list the catalog, expand and shear maps, classify coefficients,
//! verify the theorem tables and draw pictures.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage/input error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use harmonic_atlas::analytic::{parse_expr, AnalyticExpr};
use harmonic_atlas::catalog::{catalog, catalog_lookup, CatalogEntry, Family};
use harmonic_atlas::classify::{classify_harmonic, CoeffClassReport};
use harmonic_atlas::render::{render_svg, RenderOptions};
use harmonic_atlas::shear::{shear_imag, shear_real, Axis, HarmonicMap};
use harmonic_atlas::verify::{self, Theorem};
use harmonic_atlas::{TruncSeries, DEFAULT_ORDER};
use serde_json::json;
use thiserror::Error;

mod config;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser)]
#[command(name = "harmonic-atlas", version, about = "Univalent harmonic maps with half-integer coefficients")]
struct Cli {
    /// Print JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog entries
    List {
        #[arg(long)]
        family: Option<Family>,
    },
    /// Exact Taylor coefficients c_0..c_N of a catalog entry or an expression
    Expand {
        target: String,
        #[arg(default_value_t = 10)]
        order: usize,
    },
    /// Shear a conformal map (catalog id or expression) with a dilatation
    Shear {
        #[arg(allow_hyphen_values = true)]
        conformal: String,
        /// `+z`, `-z` or any expression
        #[arg(allow_hyphen_values = true)]
        omega: String,
        axis: Axis,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Coefficient class of a catalog entry or an expression
    Classify {
        target: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Recompute a theorem table; exit 1 on any mismatch
    Verify {
        theorem: Theorem,
        #[command(flatten)]
        overrides: config::Overrides,
    },
    /// Draw the image of a polar grid as SVG
    Render {
        id: String,
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        circles: usize,
        #[arg(long, default_value_t = 24)]
        rays: usize,
        #[arg(long, default_value_t = 0.99)]
        r_max: f64,
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
}

fn lookup(id: &str) -> Result<&'static CatalogEntry, CliError> {
    catalog_lookup(id).map_err(input)
}

/// Catalog id first, then expression text.
fn map_of(target: &str, order: usize) -> Result<(String, HarmonicMap), CliError> {
    if let Ok(e) = catalog_lookup(target) {
        return Ok((e.id.clone(), e.map(order).map_err(input)?));
    }
    let expr = parse_expr(target).map_err(|e| input(format!("{target:?} is neither a catalog id nor an expression: {e}")))?;
    let f = HarmonicMap::from_exprs(expr, AnalyticExpr::zero(), AnalyticExpr::zero(), order)
        .or_else(|_| {
            // unnormalized input: plain series
            let s = parse_expr(target).unwrap();
            HarmonicMap::from_series(s.series(order), TruncSeries::zero(order), AnalyticExpr::zero())
        });
    match f {
        Ok(f) => Ok((target.to_string(), f)),
        Err(_) => Err(input("expression must be a normalized map (value 0 at 0, derivative 1)")),
    }
}

fn conformal_of(target: &str) -> Result<AnalyticExpr, CliError> {
    if let Ok(e) = catalog_lookup(target) {
        return e.conformal().cloned().ok_or_else(|| input(format!("{target} is not a conformal entry")));
    }
    parse_expr(target).map_err(input)
}

fn coeff_strings(s: &TruncSeries) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_list(family: Option<Family>, as_json: bool) {
    let entries: Vec<_> = catalog().iter().filter(|e| family.is_none_or(|f| e.family == f)).collect();
    if as_json {
        let rows: Vec<_> = entries
            .iter()
            .map(|e| json!({"id": e.id, "family": e.family, "description": e.description, "expected": e.expected}))
            .collect();
        print_json(&json!(rows));
    } else {
        for e in entries {
            println!("{:<14} {:<10} {}", e.id, e.family, e.description);
        }
    }
}

fn cmd_expand(target: &str, order: usize, as_json: bool) -> Result<(), CliError> {
    if let Ok(e) = catalog_lookup(target) {
        let f = e.map(order).map_err(input)?;
        let (h, g) = (coeff_strings(f.h_series()), coeff_strings(f.g_series()));
        if as_json {
            print_json(&json!({"id": e.id, "order": order, "h": h, "g": g}));
        } else {
            println!("h: {}", h.join(", "));
            println!("g: {}", g.join(", "));
        }
        return Ok(());
    }
    let expr = parse_expr(target).map_err(input)?;
    let c = coeff_strings(&expr.series(order));
    if as_json {
        print_json(&json!({"expr": expr.to_string(), "order": order, "coeffs": c}));
    } else {
        println!("{}", c.join(", "));
    }
    Ok(())
}

fn class_json(r: &CoeffClassReport) -> serde_json::Value {
    serde_json::to_value(r).expect("serializable")
}

fn class_text(r: &CoeffClassReport) -> String {
    match &r.first_violation {
        None => r.class.to_string(),
        Some(v) => format!("{} (first violation: c_{} = {})", r.class, v.index, v.value),
    }
}

fn combined(h: &CoeffClassReport, g: &CoeffClassReport) -> &'static str {
    use harmonic_atlas::classify::CoeffClass::*;
    match (h.class, g.class) {
        (Neither, _) | (_, Neither) => "neither",
        (HalfInteger, _) | (_, HalfInteger) => "half_integer",
        _ => "integer",
    }
}

fn cmd_shear(conformal: &str, omega: &str, axis: Axis, order: usize, as_json: bool) -> Result<(), CliError> {
    let phi = conformal_of(conformal)?;
    let omega_src = omega.strip_prefix('+').unwrap_or(omega);
    let w = parse_expr(omega_src).map_err(input)?;
    let f = match axis {
        Axis::Real => shear_real(&phi, &w, order),
        Axis::Imag => shear_imag(&phi, &w, order),
    }
    .map_err(input)?;
    let (hr, gr) = classify_harmonic(&f, order);
    let matches: Vec<&str> = catalog()
        .iter()
        .filter(|e| e.is_harmonic() && e.source.is_none())
        .filter_map(|e| e.map(order).ok().filter(|m| m.h_series() == f.h_series() && m.g_series() == f.g_series()).map(|_| e.id.as_str()))
        .collect();
    if as_json {
        print_json(&json!({
            "conformal": phi.to_string(),
            "omega": w.to_string(),
            "axis": axis,
            "order": order,
            "h": coeff_strings(f.h_series()),
            "g": coeff_strings(f.g_series()),
            "class": combined(&hr, &gr),
            "h_class": class_json(&hr),
            "g_class": class_json(&gr),
            "matches": matches,
        }));
    } else {
        println!("h: {}", coeff_strings(f.h_series()).join(", "));
        println!("g: {}", coeff_strings(f.g_series()).join(", "));
        println!("class: {}", combined(&hr, &gr));
        println!("h class: {}", class_text(&hr));
        println!("g class: {}", class_text(&gr));
        if !matches.is_empty() {
            println!("matches: {}", matches.join(", "));
        }
    }
    Ok(())
}

fn cmd_classify(target: &str, order: usize, as_json: bool) -> Result<(), CliError> {
    let (id, f) = map_of(target, order)?;
    let (hr, gr) = classify_harmonic(&f, order);
    if as_json {
        print_json(&json!({"id": id, "order": order, "class": combined(&hr, &gr), "h": class_json(&hr), "g": class_json(&gr)}));
    } else {
        println!("{id}: {}", combined(&hr, &gr));
        println!("h: {}", class_text(&hr));
        println!("g: {}", class_text(&gr));
    }
    Ok(())
}

fn cmd_verify(theorem: Theorem, o: &config::Overrides, as_json: bool) -> Result<ExitCode, CliError> {
    let cfg = config::resolve(o)?;
    let report = verify::run(theorem, &cfg).map_err(|e| match e {
        verify::VerifyError::Config(m) => CliError::Config(m),
        other => CliError::Input(other.to_string()),
    })?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for r in &report.rows {
            let mark = if r.matched { "ok  " } else { "FAIL" };
            let shown: Vec<String> = r.expected.keys().map(|k| format!("{k}={}", r.computed.get(k).map_or("-", String::as_str))).collect();
            println!("{mark} {:<14} {}", r.id, shown.join(" "));
        }
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("{mark} {}: {} (expected {})", c.name, c.computed, c.expected);
        }
        for a in &report.asserted {
            println!("asserted: {} ({})", a.claim, a.reason);
        }
        println!("{theorem}: {}/{} rows match", report.summary.matched, report.summary.total);
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_render(id: &str, out: &PathBuf, opts: RenderOptions) -> Result<(), CliError> {
    let e = lookup(id)?;
    let f = e.map(16).map_err(input)?;
    let svg = render_svg(&f, &opts).map_err(input)?;
    std::fs::write(out, svg).map_err(|err| CliError::Io(format!("{}: {err}", out.display())))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let j = cli.json;
    match cli.cmd {
        Cmd::List { family } => cmd_list(family, j),
        Cmd::Expand { target, order } => cmd_expand(&target, order, j)?,
        Cmd::Shear { conformal, omega, axis, order } => cmd_shear(&conformal, &omega, axis, order, j)?,
        Cmd::Classify { target, order } => cmd_classify(&target, order, j)?,
        Cmd::Verify { theorem, overrides } => return cmd_verify(theorem, &overrides, j),
        Cmd::Render { id, out, circles, rays, r_max, samples } => {
            let opts = RenderOptions { circles, rays, r_max, samples_per_curve: samples, ..Default::default() };
            cmd_render(&id, &out, opts)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
