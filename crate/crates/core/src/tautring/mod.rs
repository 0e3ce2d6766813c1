//! Decorated stable graphs and the calculus of tautological classes under
//! forgetful and gluing maps.

mod ambient;
mod class;
mod graph;
mod ops;

pub use ambient::{Ambient, Factor, Policy};
pub use class::{one_edge_graphs, TautClass};
pub use graph::{canonicalize, DecoratedGraph, Edge, HalfEdge, Leg, Mono, Vertex};
pub use ops::OneEdgeGluing;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("unstable vertex {vertex}: genus {genus} with {valence} special points")]
    Unstable { vertex: usize, genus: u32, valence: usize },
    #[error("graph violates the compact-type policy: {0}")]
    NotCompactType(String),
    #[error("marking {0:?} already present")]
    MarkingCollision(String),
    #[error("marking {0:?} not found")]
    MissingMarking(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("unsupported pushforward of generator {0}")]
    UnsupportedPushforward(String),
    #[error("divisor outside the supported span: {0}")]
    UnsupportedDivisor(String),
    #[error("unstable moduli space: {0}")]
    UnstableAmbient(String),
    #[error("cannot parse graph: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
