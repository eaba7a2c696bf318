use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::poly::{horner, Poly};
use crate::numkernel::{GaussRational, TruncSeries};

/// Default exclusion radius around a singularity for numeric evaluation.
pub const DEFAULT_EPS_POLE: f64 = 1e-6;

/// Roots closer to the origin than this are treated as lying inside the disk.
const ROOT_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("denominator vanishes at {0} inside the unit disk")]
    PoleInDisk(Complex64),
    #[error("denominator vanishes at the origin")]
    PoleAtOrigin,
    #[error("log argument must take the value 1 at the origin")]
    LogNotNormalized,
    #[error("log argument vanishes at {0} inside the unit disk")]
    LogZeroInDisk(Complex64),
    #[error("log argument crosses the principal branch cut inside the disk")]
    BranchCrossing,
    #[error("product of a log term with a non-constant factor")]
    NonRationalProduct,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("point {0} is outside the open unit disk")]
    OutsideDisk(Complex64),
    #[error("point lies within {distance:e} of a singularity")]
    NearPole { distance: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// `c · num(z) / den(z)`
    Rational { c: GaussRational, num: Poly, den: Poly },
    /// `c · log(arg(z))`, principal branch, `arg(0) = 1`
    Log { c: GaussRational, arg: Poly },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// `−e(−z)`
    NegReflect,
    /// `−i·e(iz)`
    RotIConj,
}

#[derive(Debug, Clone)]
enum Compiled {
    Rational { c: Complex64, num: Vec<Complex64>, den: Vec<Complex64> },
    Log { c: Complex64, arg: Vec<Complex64> },
}

/// Finite sum of rational and logarithmic terms, analytic on the unit disk.
///
/// Terms are kept as authored (after cancelling common polynomial factors);
/// equality of two expressions is decided on their series, not their terms.
#[derive(Debug, Clone)]
pub struct AnalyticExpr {
    terms: Vec<Term>,
    compiled: Vec<Compiled>,
    singularities: Vec<Complex64>,
}

impl PartialEq for AnalyticExpr {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AnalyticExpr {}

impl AnalyticExpr {
    pub fn new(terms: Vec<Term>) -> Result<Self, ExprError> {
        let mut kept = Vec::with_capacity(terms.len());
        for t in terms {
            match t {
                Term::Rational { c, num, den } => {
                    if den.is_zero() {
                        return Err(ExprError::ZeroDenominator);
                    }
                    if c.is_zero() || num.is_zero() {
                        continue;
                    }
                    let (num, den) = reduce(&num, &den);
                    if den.coeff(0).is_zero() {
                        return Err(ExprError::PoleAtOrigin);
                    }
                    if let Some(r) = root_inside(&den) {
                        return Err(ExprError::PoleInDisk(r));
                    }
                    kept.push(Term::Rational { c, num, den });
                }
                Term::Log { c, arg } => {
                    if !arg.coeff(0).is_one() {
                        return Err(ExprError::LogNotNormalized);
                    }
                    if c.is_zero() || arg.is_constant() {
                        continue;
                    }
                    if let Some(r) = root_inside(&arg) {
                        return Err(ExprError::LogZeroInDisk(r));
                    }
                    if crosses_branch_cut(&arg.to_complex_coeffs()) {
                        return Err(ExprError::BranchCrossing);
                    }
                    kept.push(Term::Log { c, arg });
                }
            }
        }
        Ok(Self::compile(kept))
    }

    /// Builds from terms already known to be valid (no checks beyond reduction).
    fn from_valid(terms: Vec<Term>) -> Self {
        let terms = terms
            .into_iter()
            .filter_map(|t| match t {
                Term::Rational { c, num, den } if !c.is_zero() && !num.is_zero() => {
                    let (num, den) = reduce(&num, &den);
                    Some(Term::Rational { c, num, den })
                }
                Term::Log { c, arg } if !c.is_zero() && !arg.is_constant() => {
                    Some(Term::Log { c, arg })
                }
                _ => None,
            })
            .collect();
        Self::compile(terms)
    }

    fn compile(terms: Vec<Term>) -> Self {
        let mut singularities = Vec::new();
        let compiled = terms
            .iter()
            .map(|t| match t {
                Term::Rational { c, num, den } => {
                    singularities.extend(den.distinct_roots());
                    Compiled::Rational {
                        c: c.to_complex(),
                        num: num.to_complex_coeffs(),
                        den: den.to_complex_coeffs(),
                    }
                }
                Term::Log { c, arg } => {
                    singularities.extend(arg.distinct_roots());
                    Compiled::Log { c: c.to_complex(), arg: arg.to_complex_coeffs() }
                }
            })
            .collect();
        Self { terms, compiled, singularities }
    }

    pub fn zero() -> Self {
        Self::compile(Vec::new())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::rational(GaussRational::one(), p, Poly::one()).expect("polynomials are entire")
    }

    /// The identity `z`.
    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn rational(c: GaussRational, num: Poly, den: Poly) -> Result<Self, ExprError> {
        Self::new(vec![Term::Rational { c, num, den }])
    }

    pub fn log(c: GaussRational, arg: Poly) -> Result<Self, ExprError> {
        Self::new(vec![Term::Log { c, arg }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_logs(&self) -> bool {
        self.terms.iter().any(|t| matches!(t, Term::Log { .. }))
    }

    /// Distinct zeros of all denominators and log arguments (all on or outside |z| = 1).
    pub fn singularities(&self) -> &[Complex64] {
        &self.singularities
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_valid(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRational::from_int(-1))
    }

    pub fn scale(&self, k: &GaussRational) -> Self {
        Self::from_valid(
            self.terms
                .iter()
                .map(|t| match t {
                    Term::Rational { c, num, den } => {
                        Term::Rational { c: c * k, num: num.clone(), den: den.clone() }
                    }
                    Term::Log { c, arg } => Term::Log { c: c * k, arg: arg.clone() },
                })
                .collect(),
        )
    }

    /// `k · e(a·z)`. Keeps validity when `|a| = 1`; other `a` may move singularities into the disk.
    pub fn scale_argument(&self, a: &GaussRational, k: &GaussRational) -> Result<Self, ExprError> {
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                Term::Rational { c, num, den } => Term::Rational {
                    c: c * k,
                    num: num.compose_linear(a),
                    den: den.compose_linear(a),
                },
                Term::Log { c, arg } => Term::Log { c: c * k, arg: arg.compose_linear(a) },
            })
            .collect();
        Self::new(terms)
    }

    pub fn transform(&self, kind: TransformKind) -> Self {
        let (a, k) = match kind {
            TransformKind::NegReflect => (GaussRational::from_int(-1), GaussRational::from_int(-1)),
            TransformKind::RotIConj => (GaussRational::i(), -GaussRational::i()),
        };
        self.scale_argument(&a, &k).expect("unimodular substitution preserves the disk")
    }

    /// Product with the rational function `p/q`.
    pub fn mul_rational(&self, p: &Poly, q: &Poly) -> Result<Self, ExprError> {
        if self.has_logs() && !(p.is_constant() && q.is_constant()) {
            return Err(ExprError::NonRationalProduct);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                Term::Rational { c, num, den } => {
                    Term::Rational { c: c.clone(), num: num.mul(p), den: den.mul(q) }
                }
                Term::Log { c, arg } => {
                    let k = &p.coeff(0) / &q.coeff(0);
                    Term::Log { c: c * &k, arg: arg.clone() }
                }
            })
            .collect();
        Self::new(terms)
    }

    pub fn derivative(&self) -> Self {
        Self::from_valid(
            self.terms
                .iter()
                .map(|t| match t {
                    Term::Rational { c, num, den } => Term::Rational {
                        c: c.clone(),
                        num: num.derivative().mul(den).sub(&num.mul(&den.derivative())),
                        den: den.mul(den),
                    },
                    Term::Log { c, arg } => Term::Rational {
                        c: c.clone(),
                        num: arg.derivative(),
                        den: arg.clone(),
                    },
                })
                .collect(),
        )
    }

    /// Exact Taylor expansion through `z^order`.
    pub fn series(&self, order: usize) -> TruncSeries {
        let mut acc = TruncSeries::zero(order);
        for t in &self.terms {
            let s = match t {
                Term::Rational { c, num, den } => {
                    let inv = den.to_series(order).reciprocal().expect("den(0) != 0 after reduction");
                    num.to_series(order).mul(&inv).scale(c)
                }
                Term::Log { c, arg } => {
                    if order == 0 {
                        TruncSeries::zero(0)
                    } else {
                        let l = arg.to_series(order - 1);
                        let inv = l.reciprocal().expect("log argument is 1 at the origin");
                        arg.derivative().to_series(order - 1).mul(&inv).antiderivative().scale(c)
                    }
                }
            };
            acc = acc.add(&s);
        }
        acc
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        self.eval_with(z, DEFAULT_EPS_POLE)
    }

    pub fn eval_with(&self, z: Complex64, eps_pole: f64) -> Result<Complex64, EvalError> {
        if !(z.norm() < 1.0) {
            return Err(EvalError::OutsideDisk(z));
        }
        let distance = self
            .singularities
            .iter()
            .map(|s| (z - s).norm())
            .fold(f64::INFINITY, f64::min);
        if distance < eps_pole {
            return Err(EvalError::NearPole { distance });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation without the disk / pole guards (the caller vouches for `z`).
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.compiled.iter().fold(Complex64::new(0.0, 0.0), |acc, t| {
            acc + match t {
                Compiled::Rational { c, num, den } => c * horner(num, z) / horner(den, z),
                Compiled::Log { c, arg } => c * horner(arg, z).ln(),
            }
        })
    }
}

/// Cancels the common factor of `num/den`, keeping `den(0)` as authored when possible.
fn reduce(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let g = num.gcd(den);
    if g.is_constant() {
        return (num.clone(), den.clone());
    }
    let (n, _) = num.div_rem(&g);
    let (d, _) = den.div_rem(&g);
    (n, d)
}

fn root_inside(p: &Poly) -> Option<Complex64> {
    p.distinct_roots().into_iter().find(|r| r.norm() < 1.0 - ROOT_SLACK)
}

/// Samples concentric circles and reports whether `L(z)` crosses `(−∞, 0]`.
fn crosses_branch_cut(arg: &[Complex64]) -> bool {
    const ANGLES: usize = 720;
    for r in [0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-5] {
        let pts: Vec<Complex64> = (0..=ANGLES)
            .map(|k| horner(arg, Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / ANGLES as f64)))
            .collect();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.re < 0.0 && a.im == 0.0 {
                return true;
            }
            if (a.im < 0.0) != (b.im < 0.0) {
                let t = a.im / (a.im - b.im);
                if a.re + t * (b.re - a.re) < 0.0 {
                    return true;
                }
            }
        }
    }
    false
}

impl fmt::Display for AnalyticExpr {
    /// Canonical text: `rat(c; p0, p1, …; q0, q1, …) + log(c; l0, l1, …)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match t {
                Term::Rational { c, num, den } => write!(f, "rat({c}; {num}; {den})")?,
                Term::Log { c, arg } => write!(f, "log({c}; {arg})")?,
            }
        }
        Ok(())
    }
}

impl Serialize for AnalyticExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn expr_eval(e: &AnalyticExpr, z: Complex64, eps_pole: f64) -> Result<Complex64, EvalError> {
    e.eval_with(z, eps_pole)
}

pub fn expr_derivative(e: &AnalyticExpr) -> AnalyticExpr {
    e.derivative()
}

pub fn expr_series(e: &AnalyticExpr, order: usize) -> TruncSeries {
    e.series(order)
}

pub fn expr_transform(e: &AnalyticExpr, kind: TransformKind) -> AnalyticExpr {
    e.transform(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn rejects_interior_poles_and_bad_logs() {
        let half = Poly::new(vec![g(1), GaussRational::from_ratio(-2, 1)]);
        assert!(matches!(
            AnalyticExpr::rational(g(1), Poly::z(), half),
            Err(ExprError::PoleInDisk(_))
        ));
        assert_eq!(
            AnalyticExpr::log(g(1), Poly::from_ints(&[2, 1])),
            Err(ExprError::LogNotNormalized)
        );
        assert_eq!(
            AnalyticExpr::rational(g(1), Poly::one(), Poly::z()),
            Err(ExprError::PoleAtOrigin)
        );
        // log(1 + 2z + 2z^2): roots -1/2 ± i/2 are inside the disk
        assert!(matches!(
            AnalyticExpr::log(g(1), Poly::from_ints(&[1, 2, 2])),
            Err(ExprError::LogZeroInDisk(_))
        ));
    }

    #[test]
    fn cancels_common_factors() {
        // z(1-z)/(1-z)^3 -> z/(1-z)^2
        let num = Poly::z().mul(&Poly::from_ints(&[1, -1]));
        let den = Poly::from_ints(&[1, -1]).pow(3);
        let e = AnalyticExpr::rational(g(1), num, den).unwrap();
        match &e.terms()[0] {
            Term::Rational { den, .. } => assert_eq!(den.degree(), Some(2)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn near_pole_and_outside() {
        let e = AnalyticExpr::rational(g(1), Poly::z(), Poly::from_ints(&[1, -1])).unwrap();
        assert!(matches!(e.eval(Complex64::new(1.0, 0.0)), Err(EvalError::OutsideDisk(_))));
        assert!(matches!(
            e.eval(Complex64::new(1.0 - 1e-8, 0.0)),
            Err(EvalError::NearPole { .. })
        ));
        assert!(e.eval_with(Complex64::new(1.0 - 1e-8, 0.0), 1e-9).is_ok());
    }
}
