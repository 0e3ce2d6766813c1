//! Chern characters and Chern classes of the tangent bundles of moduli of curves
//! and of principally polarized abelian varieties.

mod ag;
mod moduli;

pub use ag::{c1_log_abar, ch_tangent_ag, hodge_power_sums, reduce_hodge, HodgeExpression, LogDivisor};
pub use moduli::{ch_log_cotangent, ch_structure_sheaves, ch_tangent_moduli, chern_tangent_moduli, CHERN_DEGREE_CAP};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::tautring::TautError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("Chern class of degree {0} requested, at most {CHERN_DEGREE_CAP} supported")]
    DegreeBeyond(usize),
    #[error("character degree must be positive")]
    ZeroDegree,
    #[error("expected a single connected moduli space")]
    NotSingleFactor,
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
