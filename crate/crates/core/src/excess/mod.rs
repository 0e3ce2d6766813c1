//! Excess multiplicity of two transverse components meeting in a point.
//!
//! `m(d_A, d_B)` is the correction term in
//! `X·V = c_{d_A}(N/N_A) + c_{d_B}(N/N_B) + m[P]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{binomial, AlgebraError, Rational, TruncatedSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExcessError {
    #[error("dimensions must be positive, got ({0}, {1})")]
    Dimension(i64, i64),
    #[error("bundle rank {rank} does not match ambient dimension {n}")]
    Rank { rank: usize, n: usize },
    #[error("component dimensions {0} + {1} differ from ambient dimension {2}")]
    DimensionSum(u32, u32, usize),
    #[error("degree {k} exceeds ambient dimension {n}")]
    DegreeTooLarge { k: usize, n: usize },
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExcessDims {
    pub d_a: u32,
    pub d_b: u32,
}

impl ExcessDims {
    pub fn new(d_a: i64, d_b: i64) -> Result<Self, ExcessError> {
        if d_a < 1 || d_b < 1 {
            return Err(ExcessError::Dimension(d_a, d_b));
        }
        Ok(Self { d_a: d_a as u32, d_b: d_b as u32 })
    }

    pub fn d(&self) -> u32 {
        self.d_a + self.d_b
    }
}

fn sign(e: u32) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Binomial coefficient that is zero when the lower index is out of range.
fn choose(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

pub fn multiplicity(dims: ExcessDims) -> BigInt {
    let d = dims.d();
    let mut m = pow2(d) - 2;
    for k in 1..d {
        let bracket = choose(k as i64 - 1, dims.d_a as i64 - 1) * sign(dims.d_a)
            + choose(k as i64 - 1, dims.d_b as i64 - 1) * sign(dims.d_b);
        m += sign(k + 1) * (pow2(d - k) - 1) * choose(d as i64, k as i64) * bracket;
    }
    m
}

pub fn multiplicity_shifted(d_a: i64, d_b: i64, k: i64) -> Result<BigInt, ExcessError> {
    let dims = ExcessDims::new(d_a - k, d_b - k)?;
    Ok(multiplicity(dims))
}

/// Split-bundle model on projective space `P^n`: the bundle `N` and the
/// normal bundles of the two components, all as line-bundle degrees in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    pub name: String,
    pub n: usize,
    pub bundle: Vec<i64>,
    pub sub_a: Vec<i64>,
    pub sub_b: Vec<i64>,
    pub dims: ExcessDims,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sub {
    A,
    B,
}

impl LocalModel {
    pub fn new(
        name: &str,
        n: usize,
        bundle: Vec<i64>,
        sub_a: Vec<i64>,
        sub_b: Vec<i64>,
        dims: ExcessDims,
    ) -> Result<Self, ExcessError> {
        if bundle.len() != n {
            return Err(ExcessError::Rank { rank: bundle.len(), n });
        }
        if dims.d() as usize != n {
            return Err(ExcessError::DimensionSum(dims.d_a, dims.d_b, n));
        }
        Ok(Self { name: name.to_string(), n, bundle, sub_a, sub_b, dims })
    }

    /// `P⁶`, `N = O(2)⁶`, two linear `P³`s.
    pub fn b2() -> Self {
        let d = ExcessDims { d_a: 3, d_b: 3 };
        Self::new("b2", 6, vec![2; 6], vec![1; 3], vec![1; 3], d).expect("valid model")
    }

    /// `P³`, `N = O ⊕ O(2)²`, a plane and a line.
    pub fn b3() -> Self {
        let d = ExcessDims { d_a: 2, d_b: 1 };
        Self::new("b3", 3, vec![0, 2, 2], vec![1], vec![1, 1], d).expect("valid model")
    }

    /// `P²`, `N = O(2) ⊕ O`, two lines.
    pub fn b4() -> Self {
        let d = ExcessDims { d_a: 1, d_b: 1 };
        Self::new("b4", 2, vec![2, 0], vec![1], vec![1], d).expect("valid model")
    }

    pub fn builtin(name: &str) -> Result<Self, ExcessError> {
        match name {
            "b2" => Ok(Self::b2()),
            "b3" => Ok(Self::b3()),
            "b4" => Ok(Self::b4()),
            other => Err(ExcessError::UnknownModel(other.to_string())),
        }
    }

    pub fn builtins() -> Vec<Self> {
        vec![Self::b2(), Self::b3(), Self::b4()]
    }

    fn sub(&self, which: Sub) -> &[i64] {
        match which {
            Sub::A => &self.sub_a,
            Sub::B => &self.sub_b,
        }
    }
}

/// Degree of `c_k(N / N_sub)` on `P^n`, read off `c(N) / c(N_sub)`.
pub fn chern_quotient_degree(model: &LocalModel, which: Sub, k: usize) -> Result<Rational, ExcessError> {
    if k > model.n {
        return Err(ExcessError::DegreeTooLarge { k, n: model.n });
    }
    let cap = model.n;
    let top = TruncatedSeries::chern_polynomial(&model.bundle, cap)?;
    let sub = TruncatedSeries::chern_polynomial(model.sub(which), cap)?;
    let q = top.mul(&sub.inv()?)?;
    Ok(q.coeff(k)?.clone())
}

pub fn oracle_multiplicity(model: &LocalModel) -> Result<BigInt, ExcessError> {
    let n = model.n;
    let top = TruncatedSeries::chern_polynomial(&model.bundle, n)?;
    let total = top.coeff(n)?.clone();
    let qa = chern_quotient_degree(model, Sub::A, model.dims.d_a as usize)?;
    let qb = chern_quotient_degree(model, Sub::B, model.dims.d_b as usize)?;
    let m = total - qa - qb;
    debug_assert!(m.is_integer());
    Ok(m.to_integer())
}

pub fn binomial_identity_check(d: u64, k: u64) -> bool {
    if k >= d {
        return false;
    }
    let lhs: BigInt = (k..d).map(|j| binomial(d, j) * binomial(j, k)).sum();
    let rhs = (pow2((d - k) as u32) - 1) * binomial(d, k);
    lhs == rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualModel {
    pub total: BigInt,
    pub divisor_part: Rational,
    pub residual_part: Rational,
}

/// `E = O(2)³` on `P³` with section `(xz, yz, z²)`: the zero scheme is the
/// plane `z = 0` plus an embedded point.
pub fn verify_residual_model() -> Result<ResidualModel, ExcessError> {
    let cap = 3;
    let c_e = TruncatedSeries::chern_polynomial(&[2, 2, 2], cap)?;
    let total = c_e.coeff(3)?.clone();
    // D = V(z) has normal bundle O(1), so s(D, P³) = H / (1 + H).
    let h = TruncatedSeries::from_ints(&[0, 1], cap)?;
    let seg_d = h.mul(&TruncatedSeries::linear(1, cap).inv()?)?;
    let divisor_part = c_e.mul(&seg_d)?.coeff(3)?.clone();
    // Residual term c(E ⊗ O(-D)) ∩ s(R, P³) with R a reduced point: only the
    // constant term survives.
    let twisted = TruncatedSeries::chern_polynomial(&[1, 1, 1], cap)?;
    let residual_part = twisted.coeff(0)?.clone();
    assert_eq!(total, &divisor_part + &residual_part);
    assert!(residual_part.is_one());
    let total = total.to_integer();
    Ok(ResidualModel { total, divisor_part, residual_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rint;

    #[test]
    fn quotient_degrees() {
        assert_eq!(chern_quotient_degree(&LocalModel::b2(), Sub::A, 3).unwrap(), rint(42));
        assert_eq!(chern_quotient_degree(&LocalModel::b3(), Sub::B, 1).unwrap(), rint(2));
        assert_eq!(chern_quotient_degree(&LocalModel::b3(), Sub::A, 2).unwrap(), rint(1));
    }

    #[test]
    fn shift_precondition() {
        assert!(multiplicity_shifted(2, 1, 1).is_err());
        assert_eq!(multiplicity_shifted(3, 3, 0).unwrap(), BigInt::from(-20));
    }
}
