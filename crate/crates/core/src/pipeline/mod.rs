//! Assembly of the Torelli pullback classes from the other modules.

mod abar4;
mod g4;
mod g5;

pub use abar4::{t_pushforward_abar4, Abar4Result};
pub use g4::{t_pullback_g4, G4Maps};
pub use g5::{faber_kappa, t_pullback_g5, var_name, G5Report};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{fmt_rational, Rational};
use crate::chern::ChernError;
use crate::excess::ExcessError;
use crate::tautring::{TautClass, TautError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{what}: got {got}\n{ledger}")]
    Mismatch { what: String, got: String, ledger: String },
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Excess(#[from] ExcessError),
}

/// One labeled summand `multiplicity · class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub source: String,
    pub anchor: String,
    pub class: TautClass,
    pub multiplicity: Rational,
}

impl Contribution {
    pub fn weighted(&self) -> TautClass {
        self.class.scale(&self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ContributionLedger {
    pub entries: Vec<Contribution>,
}

impl ContributionLedger {
    pub fn push(&mut self, source: &str, anchor: &str, class: TautClass, multiplicity: Rational) {
        self.entries.push(Contribution { source: source.into(), anchor: anchor.into(), class, multiplicity });
    }

    pub fn get(&self, source: &str) -> Option<&Contribution> {
        self.entries.iter().find(|e| e.source == source)
    }

    pub fn total(&self) -> Option<TautClass> {
        let mut it = self.entries.iter();
        let first = it.next()?.weighted();
        Some(it.fold(first, |acc, e| acc.add(&e.weighted())))
    }
}

impl fmt::Display for ContributionLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}\t{}\t{}\t{}", e.source, fmt_rational(&e.multiplicity), e.class.pretty(), e.anchor)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorelliDimension {
    pub g: u32,
    pub dim: i64,
    pub verdict: String,
}

/// Expected dimension `(-g² + 11g - 12)/2` of `t^*T_g`.
pub fn torelli_dimension(g: u32) -> TorelliDimension {
    let gi = g as i64;
    let dim = (-gi * gi + 11 * gi - 12) / 2;
    let verdict = if dim < 0 {
        "vanishes (negative dimension)".to_string()
    } else if g == 8 {
        format!("dimension {dim}; vanishing rests on a separate cohomological argument, not recomputed")
    } else {
        format!("dimension {dim}")
    };
    TorelliDimension { g, dim, verdict }
}

/// Coefficient of `class` in `c` when `c` is a multiple of `class`.
pub fn multiple_of(c: &TautClass, class: &TautClass) -> Option<Rational> {
    let (g, w) = class.terms().next()?;
    let r = c.coeff(g) / w;
    if c.sub(&class.scale(&r)).is_zero() {
        Some(r)
    } else if c.is_zero() {
        Some(Rational::zero())
    } else {
        None
    }
}
