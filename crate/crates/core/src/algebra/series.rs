use num_traits::{One, Zero};

use super::{AlgebraError, Rational};

pub const DEFAULT_SERIES_CAP: usize = 16;

/// Univariate power series `Σ c_k H^k` truncated after degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Coefficients beyond the given ones are zero. Supplying more than
    /// `cap + 1` coefficients is an error rather than a silent truncation.
    pub fn new(coeffs: Vec<Rational>, cap: usize) -> Result<Self, AlgebraError> {
        if coeffs.len() > cap + 1 {
            return Err(AlgebraError::DegreeLimit { degree: coeffs.len() - 1, cap });
        }
        let mut coeffs = coeffs;
        coeffs.resize(cap + 1, Rational::zero());
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64], cap: usize) -> Result<Self, AlgebraError> {
        Self::new(coeffs.iter().map(|&c| super::rint(c)).collect(), cap)
    }

    pub fn one(cap: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); cap + 1];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    /// `1 + a H`, the Chern polynomial of a line bundle of degree `a`.
    pub fn linear(a: i64, cap: usize) -> Self {
        let mut s = Self::one(cap);
        if cap >= 1 {
            s.coeffs[1] = super::rint(a);
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&Rational, AlgebraError> {
        self.coeffs.get(k).ok_or(AlgebraError::DegreeLimit { degree: k, cap: self.cap() })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cap() != other.cap() {
            return Err(AlgebraError::CapMismatch(self.cap(), other.cap()));
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse, solved degree by degree.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = c0.recip();
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc / c0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(self.cap());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Product of the Chern polynomials `Π (1 + a_i H)`.
    pub fn chern_polynomial(degrees: &[i64], cap: usize) -> Result<Self, AlgebraError> {
        degrees.iter().try_fold(Self::one(cap), |acc, &a| acc.mul(&Self::linear(a, cap)))
    }
}
