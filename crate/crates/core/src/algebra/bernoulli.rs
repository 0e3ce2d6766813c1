use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, AlgebraError, Rational};

pub const BERNOULLI_CAP: usize = 32;

/// Bernoulli numbers with `B_1 = -1/2`, from `Σ_{k≤m} C(m+1,k) B_k = 0`.
fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli_number(m: usize) -> Result<Rational, AlgebraError> {
    if m > BERNOULLI_CAP {
        return Err(AlgebraError::DegreeLimit { degree: m, cap: BERNOULLI_CAP });
    }
    Ok(bernoulli_numbers(m).pop().unwrap())
}

/// `B_m(x)` with the convention `B_1(x) = x - 1/2`.
pub fn bernoulli_polynomial(m: usize, x: &Rational) -> Result<Rational, AlgebraError> {
    bernoulli_polynomial_capped(m, x, BERNOULLI_CAP)
}

pub fn bernoulli_polynomial_capped(m: usize, x: &Rational, cap: usize) -> Result<Rational, AlgebraError> {
    if m > cap {
        return Err(AlgebraError::DegreeLimit { degree: m, cap });
    }
    let b = bernoulli_numbers(m);
    // Horner-free direct sum; m is small.
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    for j in 0..=m {
        // term for x^j uses B_{m-j}
        acc += Rational::from_integer(binomial(m as u64, j as u64)) * &b[m - j] * &xp;
        xp *= x;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rint};

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_polynomial(1, &rint(1)).unwrap(), rat(1, 2));
        assert_eq!(bernoulli_polynomial(4, &rint(0)).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_number(12).unwrap(), rat(-691, 2730));
        assert!(bernoulli_polynomial(33, &rint(0)).is_err());
    }
}
