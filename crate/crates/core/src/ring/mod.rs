//! Exact arithmetic in `R = Z[x^±1, y^±1]` and `R[t^±1]`.

mod binomial;
mod laurent;
mod parse;
mod truncated;

pub use laurent::{Assignment, Exponent, LaurentPoly, Subst, UnitMonomial, Valuation};
pub use parse::parse_poly;
pub use truncated::{degree_at, dimension, index, monomial_at, TruncatedPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operation is only defined for polynomials without t")]
    ContainsT,
    #[error("truncation degree must be at least 1")]
    ZeroDegree,
    #[error("truncation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("expected {expected} coordinates, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
