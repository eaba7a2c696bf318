use std::fmt;

use num_complex::Complex64;

use crate::numkernel::{GaussRational, Rational, TruncSeries};

/// Polynomial over the Gaussian rationals, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(GaussRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| GaussRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Multiplicity of the root at the origin (`None` for the zero polynomial).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &GaussRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// `p(c·z)`.
    pub fn compose_linear(&self, c: &GaussRational) -> Self {
        let mut pow = GaussRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = &pow * c;
        }
        Self::new(out)
    }

    /// Divides by `z^k`; the low coefficients must already be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(GaussRational::is_zero));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Euclidean division over the field ℚ(i). Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GaussRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// `p / gcd(p, p′)`: same roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn eval_exact(&self, z: &GaussRational) -> GaussRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRational::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn to_series(&self, order: usize) -> TruncSeries {
        TruncSeries::from_coeffs_with_order(self.coeffs.clone(), order)
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussRational::to_complex).collect()
    }

    /// Numeric roots with multiplicity collapsed (roots of the square-free part).
    pub fn distinct_roots(&self) -> Vec<Complex64> {
        super::roots::polynomial_roots(&self.square_free().to_complex_coeffs())
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

impl fmt::Display for Poly {
    /// Comma separated coefficient list, ascending degree (`0` for the zero polynomial).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_degrees() {
        assert_eq!(Poly::from_ints(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 3]).valuation(), Some(2));
    }

    #[test]
    fn division_and_gcd() {
        // (1-z)^2 (1+z) and (1-z)(1+z^2)
        let a = Poly::from_ints(&[1, -1]).pow(2).mul(&Poly::from_ints(&[1, 1]));
        let b = Poly::from_ints(&[1, -1]).mul(&Poly::from_ints(&[1, 0, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        assert_eq!(Poly::from_ints(&[1, -1]).pow(3).square_free().monic(), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn roots_of_repeated_factor_are_sharp() {
        let p = Poly::from_ints(&[1, -1]).pow(3).mul(&Poly::from_ints(&[1, 0, 1]).pow(2));
        let mut roots = p.distinct_roots();
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert_eq!(roots.len(), 3);
        assert!((roots[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((roots[2] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn display_lists_coefficients() {
        assert_eq!(Poly::from_ints(&[1, -1, 1]).to_string(), "1, -1, 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
