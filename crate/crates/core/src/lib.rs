//! Exact tautological-class calculus on moduli of curves, Chern characters of
//! moduli tangent bundles, excess-intersection multiplicities, combinatorial
//! Torelli pairs and a numerical period-matrix certificate.

pub mod algebra;
pub mod checks;
pub mod chern;
pub mod constants;
pub mod ctp;
pub mod excess;
pub mod period;
pub mod pipeline;
pub mod tautring;

pub use algebra::{Rational, TruncatedSeries};
pub use tautring::{Ambient, DecoratedGraph, Policy, TautClass};
