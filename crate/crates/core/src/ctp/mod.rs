//! Components of the Torelli fiber product described by pairs of trees.

mod components;
mod intersections;
mod pairing;
mod trees;

pub use components::{enumerate_components, Component, Sign, ENUMERATION_LIMIT};
pub use intersections::{component_name, one_edge_intersections, IntersectionStratum};
pub use pairing::{check_pairing, pairing_equivalent, Color, HalfEdgePairing, PairingVerdict, Piece};
pub use trees::{enumerate_stable_trees, GenusTree};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CtpError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("enumeration at genus {g} needs about {cost} candidates, above the limit")]
    TooLarge { g: u32, cost: u64 },
    #[error("{0}")]
    Scope(String),
}

/// Dimension of a component, `Σ_v (3g(v) - 3 + 2d(v) - [g(v) = 1])`.
pub fn component_dimension(c: &Component) -> i64 {
    c.dimension()
}
