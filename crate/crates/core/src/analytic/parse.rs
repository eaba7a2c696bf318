//! Text input for expressions.
//!
//! Two notations are accepted and may be mixed in one sum:
//! * infix: `z/(1-z+z^2)`, `5/8 log(1+z) - 1/8 log(1-z) + 1/(4(1-z)) - 1/4`,
//!   with `z`, `i`, integer literals, `+ - * / ^`, implicit multiplication and `log(…)`;
//! * canonical (what `Display` prints): `rat(c; p0, p1; q0, q1)` and `log(c; l0, l1)`.

use std::str::FromStr;

use thiserror::Error;

use super::expr::{AnalyticExpr, ExprError, Term};
use super::poly::Poly;
use crate::numkernel::GaussRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at offset {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("bad coefficient literal {0:?}")]
    BadLiteral(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Invalid(#[from] ExprError),
}

/// Intermediate value: a rational function plus opaque terms (logs, and canonical
/// `rat(…)` terms which are kept exactly as written).
#[derive(Clone)]
struct Value {
    num: Poly,
    den: Poly,
    logs: Vec<Term>,
}

fn scale_term(t: Term, k: &GaussRational) -> Term {
    match t {
        Term::Rational { c, num, den } => Term::Rational { c: &c * k, num, den },
        Term::Log { c, arg } => Term::Log { c: &c * k, arg },
    }
}

impl Value {
    fn rat(num: Poly, den: Poly) -> Self {
        Self { num, den, logs: Vec::new() }
    }

    fn constant(c: GaussRational) -> Self {
        Self::rat(Poly::constant(c), Poly::one())
    }

    fn as_constant(&self) -> Option<GaussRational> {
        (self.logs.is_empty() && self.num.is_constant() && self.den.is_constant())
            .then(|| &self.num.coeff(0) / &self.den.coeff(0))
    }

    fn add(self, rhs: Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        let (num, den) = simplify(num, den);
        let mut logs = self.logs;
        logs.extend(rhs.logs);
        Self { num, den, logs }
    }

    fn neg(self) -> Self {
        let m = GaussRational::from_int(-1);
        Self {
            num: self.num.neg(),
            den: self.den,
            logs: self.logs.into_iter().map(|t| scale_term(t, &m)).collect(),
        }
    }

    fn mul(self, rhs: Self) -> Result<Self, ParseError> {
        let (scalar, other) = match (self.as_constant(), rhs.as_constant()) {
            (Some(k), _) => (k, rhs),
            (_, Some(k)) => (k, self),
            _ if self.logs.is_empty() && rhs.logs.is_empty() => {
                let (num, den) = simplify(self.num.mul(&rhs.num), self.den.mul(&rhs.den));
                return Ok(Self::rat(num, den));
            }
            _ => return Err(ParseError::Unsupported("log or canonical term times a non-constant")),
        };
        Ok(Self {
            num: other.num.scale(&scalar),
            den: other.den,
            logs: other.logs.into_iter().map(|t| scale_term(t, &scalar)).collect(),
        })
    }

    fn recip(self) -> Result<Self, ParseError> {
        if !self.logs.is_empty() {
            return Err(ParseError::Unsupported("division by a log or canonical term"));
        }
        if self.num.is_zero() {
            return Err(ParseError::DivisionByZero);
        }
        Ok(Self::rat(self.den, self.num))
    }

    fn pow(self, k: u32) -> Result<Self, ParseError> {
        if !self.logs.is_empty() {
            return Err(ParseError::Unsupported("power of a log or canonical term"));
        }
        Ok(Self::rat(self.num.pow(k), self.den.pow(k)))
    }

    /// `log(num/den)` split as `log(num/num(0)) − log(den/den(0))`; requires value 1 at 0.
    fn log(self) -> Result<Self, ParseError> {
        if !self.logs.is_empty() {
            return Err(ParseError::Unsupported("log of a log or canonical term"));
        }
        let n0 = self.num.coeff(0);
        let d0 = self.den.coeff(0);
        if n0.is_zero() || d0.is_zero() || n0 != d0 {
            return Err(ExprError::LogNotNormalized.into());
        }
        let one = GaussRational::one();
        let mut logs = Vec::new();
        if !self.num.is_constant() {
            logs.push(Term::Log { c: one.clone(), arg: self.num.monic_at_zero() });
        }
        if !self.den.is_constant() {
            logs.push(Term::Log { c: -one, arg: self.den.monic_at_zero() });
        }
        Ok(Self { num: Poly::zero(), den: Poly::one(), logs })
    }

    fn into_expr(self) -> Result<AnalyticExpr, ParseError> {
        let mut terms = Vec::new();
        if !self.num.is_zero() {
            terms.push(Term::Rational { c: GaussRational::one(), num: self.num, den: self.den });
        }
        terms.extend(self.logs);
        Ok(AnalyticExpr::new(terms)?)
    }
}

impl Poly {
    fn monic_at_zero(&self) -> Poly {
        self.scale(&self.coeff(0).inv().expect("nonzero constant term"))
    }
}

/// Cancels common factors and normalises the denominator to `den(0) = 1` when possible.
fn simplify(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.is_constant() {
        (num, den)
    } else {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    };
    let d0 = den.coeff(0);
    let norm = if d0.is_zero() { den.leading().cloned().unwrap() } else { d0 };
    if !norm.is_one() {
        let inv = norm.inv().unwrap();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    (num, den)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn unexpected(&mut self) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        };
        ParseError::Unexpected { pos: self.pos, found }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        // `z` and `i` are single-letter tokens so that `iz` or `zi` read as products.
        let len = if rest.starts_with(['z', 'i']) {
            1
        } else {
            rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len())
        };
        self.pos += len;
        rest[..len].to_string()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.mul(self.unary()?.recip()?)?;
            } else if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(') {
                acc = acc.mul(self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let rest = &self.src[start..];
            let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let k: u32 = rest[..len].parse().map_err(|_| self.unexpected())?;
            self.pos += len;
            return base.pow(k);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let rest = &self.src[self.pos..];
                let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let lit = &rest[..len];
                let v = GaussRational::from_str(lit).map_err(|_| ParseError::BadLiteral(lit.into()))?;
                self.pos += len;
                Ok(Value::constant(v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.ident().as_str() {
                    "z" => Ok(Value::rat(Poly::z(), Poly::one())),
                    "i" => Ok(Value::constant(GaussRational::i())),
                    "log" => {
                        self.expect('(')?;
                        if let Some(body) = self.canonical_body()? {
                            return canonical_log(&body);
                        }
                        let v = self.expr()?;
                        self.expect(')')?;
                        v.log()
                    }
                    "rat" => {
                        self.expect('(')?;
                        match self.canonical_body()? {
                            Some(body) => canonical_rat(&body),
                            None => Err(self.unexpected()),
                        }
                    }
                    _ => {
                        self.pos = start;
                        Err(self.unexpected())
                    }
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    /// If the parenthesised body (after the opening paren) contains a top-level `;`,
    /// consumes it through the closing paren and returns the `;`-separated parts.
    fn canonical_body(&mut self) -> Result<Option<Vec<String>>, ParseError> {
        let rest = &self.src[self.pos..];
        let mut depth = 0usize;
        for (k, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    let body = &rest[..k];
                    if !body.contains(';') {
                        return Ok(None);
                    }
                    self.pos += k + 1;
                    return Ok(Some(body.split(';').map(|s| s.trim().to_string()).collect()));
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        self.pos = self.src.len();
        Err(self.unexpected())
    }
}

fn literal(s: &str) -> Result<GaussRational, ParseError> {
    GaussRational::from_str(s).map_err(|_| ParseError::BadLiteral(s.into()))
}

fn poly_list(s: &str) -> Result<Poly, ParseError> {
    s.split(',').map(|c| literal(c.trim())).collect::<Result<Vec<_>, _>>().map(Poly::new)
}

fn canonical_rat(parts: &[String]) -> Result<Value, ParseError> {
    let [c, p, q] = parts else {
        return Err(ParseError::BadLiteral(parts.join(";")));
    };
    let c = literal(c)?;
    let den = poly_list(q)?;
    if den.is_zero() {
        return Err(ParseError::DivisionByZero);
    }
    let term = Term::Rational { c, num: poly_list(p)?, den };
    Ok(Value { num: Poly::zero(), den: Poly::one(), logs: vec![term] })
}

fn canonical_log(parts: &[String]) -> Result<Value, ParseError> {
    let [c, l] = parts else {
        return Err(ParseError::BadLiteral(parts.join(";")));
    };
    let term = Term::Log { c: literal(c)?, arg: poly_list(l)? };
    Ok(Value { num: Poly::zero(), den: Poly::one(), logs: vec![term] })
}

pub fn parse_expr(src: &str) -> Result<AnalyticExpr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    v.into_expr()
}

impl FromStr for AnalyticExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(src: &str, n: usize) -> Vec<String> {
        parse_expr(src).unwrap().series(n).coeffs().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn infix_rational_functions() {
        assert_eq!(coeffs("z/(1-z+z^2)", 7), ["0", "1", "1", "0", "-1", "-1", "0", "1"]);
        assert_eq!(coeffs("z(2-z)/(2(1-z))", 3), ["0", "1", "1/2", "1/2"]);
        assert_eq!(coeffs("-i*(i z)/(1+(i z)^2)", 3), ["0", "1", "0", "1"]);
    }

    #[test]
    fn infix_logs() {
        assert_eq!(coeffs("-2log(1-z) - z", 3), ["0", "1", "1", "2/3"]);
        assert_eq!(coeffs("log((1+z)/(1-z))", 3), ["0", "2", "0", "2/3"]);
        assert!(matches!(
            parse_expr("log(2+z)"),
            Err(ParseError::Invalid(ExprError::LogNotNormalized))
        ));
        assert!(matches!(parse_expr("z log(1+z)"), Err(ParseError::Unsupported(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let e = parse_expr("5/8 log(1+z) - 1/8 log(1-z) + 1/(4(1-z)) - 1/4").unwrap();
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.to_string(), text);
        let c = parse_expr("rat(1/2+1/3 i; 0, 1; 1, -1)").unwrap();
        assert_eq!(parse_expr(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn errors_are_positioned() {
        assert!(matches!(parse_expr("z +"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_expr("sin(z)"), Err(ParseError::Unexpected { pos: 0, .. })));
        assert_eq!(parse_expr("1/(z-z)").unwrap_err(), ParseError::DivisionByZero);
        assert!(matches!(
            parse_expr("1/(1-2z)"),
            Err(ParseError::Invalid(ExprError::PoleInDisk(_)))
        ));
    }
}
