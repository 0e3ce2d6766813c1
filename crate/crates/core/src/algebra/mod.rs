//! Exact rational arithmetic, truncated power series, Bernoulli polynomials and
//! Newton-identity conversions between Chern characters and Chern classes.

mod bernoulli;
mod newton;
mod poly;
mod rational;
mod series;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, bernoulli_polynomial_capped, BERNOULLI_CAP};
pub use newton::{ch_from_chern, chern_from_ch, Ring};
pub use poly::{Monomial, Poly};
pub use rational::{binomial, factorial, fmt_rational, parse_rational, rat, rint, Rational};
pub use series::{TruncatedSeries, DEFAULT_SERIES_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeLimit { degree: usize, cap: usize },
    #[error("series caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("Chern character entries given through degree {given}, need {needed}")]
    MissingCh { given: usize, needed: usize },
    #[error("product not supported: {0}")]
    Product(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
