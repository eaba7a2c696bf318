//! Exact arithmetic: big rationals, Gaussian rationals and truncated power series.

mod gauss;
mod series;

pub use gauss::{GaussRational, ParseGaussError};
pub use series::{
    series_add, series_antiderivative, series_compose_linear, series_derivative, series_mul,
    series_reciprocal, SeriesError, TruncSeries, DEFAULT_ORDER,
};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
