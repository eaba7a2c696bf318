//! Closed forms: sums of rational terms `c·P/Q` and log terms `c·log L`.

mod expr;
mod parse;
mod poly;
mod roots;

pub use expr::{
    expr_derivative, expr_eval, expr_series, expr_transform, AnalyticExpr, EvalError, ExprError,
    Term, TransformKind, DEFAULT_EPS_POLE,
};
pub use parse::{parse_expr, ParseError};
pub use poly::Poly;
