//! Verification settings from a TOML file, overridden by flags.
//!
//! ```toml
//! order = 64
//! tol = 1e-9
//! r_max = 0.999
//! [grid]
//! radii = 64     # number of radii
//! angles = 256
//! ```

use std::path::{Path, PathBuf};

use harmonic_atlas::verify::VerifyConfig;
use toml::Value;

use crate::CliError;

pub const ENV_VAR: &str = "HARMONIC_ATLAS_CONFIG";

/// Flag values; `None` leaves the file (or default) value alone.
#[derive(Debug, Default, Clone, clap::Args)]
pub struct Overrides {
    /// Config file (default: $HARMONIC_ATLAS_CONFIG)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Series order N
    #[arg(long)]
    pub order: Option<usize>,
    /// Number of grid radii
    #[arg(long)]
    pub grid_radii: Option<usize>,
    /// Angles per grid radius
    #[arg(long)]
    pub grid_angles: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
}

fn bad(path: &Path, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{}: {msg}", path.display()))
}

fn get<'a>(table: &'a toml::Table, dotted: &str) -> Option<&'a Value> {
    let mut parts = dotted.split('.');
    let mut cur = table.get(parts.next()?)?;
    for p in parts {
        cur = cur.as_table()?.get(p)?;
    }
    Some(cur)
}

fn as_count(path: &Path, key: &str, v: &Value) -> Result<usize, CliError> {
    v.as_integer()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(path, format!("{key} must be a nonnegative integer")))
}

fn as_real(path: &Path, key: &str, v: &Value) -> Result<f64, CliError> {
    v.as_float()
        .or_else(|| v.as_integer().map(|n| n as f64))
        .ok_or_else(|| bad(path, format!("{key} must be a number")))
}

fn apply_file(cfg: &mut VerifyConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(path, e))?;
    let table: toml::Table = text.parse().map_err(|e| bad(path, e))?;
    const KNOWN: [&str; 5] = ["order", "tol", "r_max", "grid.radii", "grid.angles"];
    for (k, v) in &table {
        let ok = match v.as_table() {
            Some(sub) if k == "grid" => sub.keys().all(|s| KNOWN.contains(&format!("grid.{s}").as_str())),
            _ => KNOWN.contains(&k.as_str()),
        };
        if !ok {
            return Err(bad(path, format!("unknown key {k:?}")));
        }
    }
    if let Some(v) = get(&table, "order") {
        cfg.order = as_count(path, "order", v)?;
    }
    if let Some(v) = get(&table, "grid.radii") {
        cfg.grid_radii = as_count(path, "grid.radii", v)?;
    }
    if let Some(v) = get(&table, "grid.angles") {
        cfg.grid_angles = as_count(path, "grid.angles", v)?;
    }
    if let Some(v) = get(&table, "tol") {
        cfg.tol = as_real(path, "tol", v)?;
    }
    if let Some(v) = get(&table, "r_max") {
        cfg.r_max = as_real(path, "r_max", v)?;
    }
    Ok(())
}

pub fn resolve(o: &Overrides) -> Result<VerifyConfig, CliError> {
    let mut cfg = VerifyConfig::default();
    let path = o.config.clone().or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from));
    if let Some(p) = path {
        apply_file(&mut cfg, &p)?;
    }
    if let Some(v) = o.order {
        cfg.order = v;
    }
    if let Some(v) = o.grid_radii {
        cfg.grid_radii = v;
    }
    if let Some(v) = o.grid_angles {
        cfg.grid_angles = v;
    }
    if let Some(v) = o.tol {
        cfg.tol = v;
    }
    if let Some(v) = o.r_max {
        cfg.r_max = v;
    }
    Ok(cfg)
}
