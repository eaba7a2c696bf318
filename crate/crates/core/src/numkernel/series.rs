//! Truncated Taylor series `c₀ + c₁z + … + c_N z^N` over Gaussian rationals.
//!
//! Binary operations truncate to the smaller of the two orders; nothing ever
//! extends the order except `antiderivative`, which gains one degree because the
//! integral of a known `c_N z^N` term is known exactly.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{GaussRational, Rational};

/// Default truncation order used by the verification pipeline.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<GaussRational>,
}

impl TruncSeries {
    /// Builds a series of order `coeffs.len() - 1`. An empty vector gives the
    /// order-0 zero series.
    pub fn from_coeffs(mut coeffs: Vec<GaussRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(GaussRational::zero());
        }
        Self { coeffs }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs_with_order(mut coeffs: Vec<GaussRational>, order: usize) -> Self {
        coeffs.resize(order + 1, GaussRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![GaussRational::zero(); order + 1] }
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    /// `c·z^k`, or zero when `k > order`.
    pub fn monomial(k: usize, c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    /// Coefficient of `z^n`. Panics when `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &GaussRational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussRational::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs_with_order(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &GaussRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![GaussRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse to the same order.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].inv().ok_or(SeriesError::ZeroConstantTerm)?;
        let n = self.order();
        let mut out: Vec<GaussRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = GaussRational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = &acc + &(a * &out[k - j]);
                }
            }
            out.push(-(&acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// `d/dz`; the order drops by one (an order-0 series maps to the order-0 zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::from_integer(((k + 1) as i64).into())))
                .collect(),
        }
    }

    /// `∫₀^z`; constant term 0 and the order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(GaussRational::zero());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| {
            c.scale(&Rational::new(1.into(), ((k + 1) as i64).into()))
        }));
        Self { coeffs }
    }

    /// Substitution `z → c·z`: coefficient `n` is multiplied by `cⁿ`.
    pub fn compose_linear(&self, c: &GaussRational) -> Self {
        let mut pow = GaussRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow = &pow * c;
        }
        Self { coeffs }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    /// The coefficients as floating point numbers, for repeated evaluation.
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussRational::to_complex).collect()
    }
}

pub fn series_add(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    a.add(b)
}

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    a.mul(b)
}

pub fn series_reciprocal(a: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    a.reciprocal()
}

pub fn series_derivative(a: &TruncSeries) -> TruncSeries {
    a.derivative()
}

pub fn series_antiderivative(a: &TruncSeries) -> TruncSeries {
    a.antiderivative()
}

pub fn series_compose_linear(a: &TruncSeries, c: &GaussRational) -> TruncSeries {
    a.compose_linear(c)
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::mul(self, rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::neg(self)
    }
}
