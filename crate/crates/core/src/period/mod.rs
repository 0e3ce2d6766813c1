//! Genus-2 period numerics: sheet-tracked contour integrals, the A-normalized
//! basis, the Cauchy-kernel coefficients, the integrals `G_i`, the constants
//! `D_i` and the combination `ρ_4`.

mod curve;
mod periods;
mod quad;

pub use curve::{y_on_path, HyperellipticCurve, PathPiece, Sheet, TrackedPath, TRACK_SAMPLES};
pub use periods::{
    cauchy_hk_at, cauchy_kernel_coeffs, cauchy_kernel_coeffs_with, compute_d, compute_g, contour_integrate, cycles,
    d_from_coefficients, g_density, inner_integral_quadrature, inner_integral_residue, integrate_cycle, normalized_basis,
    period_matrix, period_table, rho4, rho4_combination, rho4_for, rho4_table, segment_integral, CauchyCoeffs, CircleNodes, Cycle,
    CycleLabel, Cycles, InnerRule, NormalizedBasis, PeriodConfig, PeriodMatrix, PeriodTable, QuadRule, Rho4Certificate, Rho4Table,
};
pub use quad::{adaptive, periodic_trapezoid, SUBDIVISION_BUDGET};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodError {
    #[error("path passes within {clearance:e} of a branch point near {z}")]
    Clearance { z: Complex64, clearance: f64 },
    #[error("quadrature did not converge: error {err:e} above tolerance {tol:e}")]
    NoConvergence { err: f64, tol: f64 },
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("singular period matrix (|det| = {0:e})")]
    Singular(f64),
    #[error("circle of radius {eps} around 0 reaches a branch point at distance {nearest}")]
    EpsilonTooLarge { eps: f64, nearest: f64 },
    #[error("{0}")]
    Geometry(String),
    #[error("rho4 certificate failed: |value| not above margin times error\n{}", .0.primary)]
    Certificate(Box<Rho4Certificate>),
}
