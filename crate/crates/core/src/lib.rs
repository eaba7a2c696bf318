//! Univalent harmonic mappings with integer and half-integer Taylor coefficients.
//!
//! The crate builds the known catalog of such maps, reproduces their shear
//! constructions with exact Gaussian-rational series arithmetic, classifies
//! coefficients exactly, and checks the geometric claims (direction convexity,
//! starlikeness, class 𝒰 membership) with grid-sampled certificates.
//!
//! Grid certificates are evidence, not proofs: a nonnegative margin on a
//! finite sample of the disk does not establish an inequality on all of it.

pub mod analytic;
pub mod catalog;
pub mod classify;
pub mod geomtest;
pub mod numkernel;
pub mod render;
pub mod shear;
pub mod verify;

pub use analytic::{AnalyticExpr, Poly, Term};
pub use catalog::{catalog_build, catalog_lookup, CatalogEntry, Family, FlagSet};
pub use numkernel::{GaussRational, Rational, TruncSeries, DEFAULT_ORDER};
pub use shear::{shear_imag, shear_real, Axis, HarmonicMap};
