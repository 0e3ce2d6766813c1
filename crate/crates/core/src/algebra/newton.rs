use num_bigint::BigInt;
use num_traits::One;

use super::{factorial, AlgebraError, Rational};

/// Commutative ring elements as used by the Chern/character conversions.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }
}

fn sign(i: usize) -> Rational {
    if i.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Chern classes `c_1..c_k` from Chern characters `ch[0] = ch_1, ...` via
/// `k c_k = Σ_{i=1}^k (-1)^{i-1} i! ch_i c_{k-i}`.
pub fn chern_from_ch<R: Ring>(ch: &[R], k: usize) -> Result<Vec<R>, AlgebraError> {
    if ch.len() < k {
        return Err(AlgebraError::MissingCh { given: ch.len(), needed: k });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let one = ch[0].one_like();
    let mut c: Vec<R> = vec![one];
    for n in 1..=k {
        let mut acc = ch[0].zero_like();
        for i in 1..=n {
            let coeff = sign(i - 1) * Rational::from_integer(factorial(i as u32));
            let term = ch[i - 1].mul(&c[n - i])?;
            acc = acc.add(&term.scale(&coeff));
        }
        c.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    c.remove(0);
    Ok(c)
}

/// Inverse of [`chern_from_ch`]: characters `ch_1..ch_k` from classes `c_1..c_k`.
pub fn ch_from_chern<R: Ring>(c: &[R], k: usize) -> Result<Vec<R>, AlgebraError> {
    if c.len() < k {
        return Err(AlgebraError::MissingCh { given: c.len(), needed: k });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let one = c[0].one_like();
    let e = |j: usize| if j == 0 { one.clone() } else { c[j - 1].clone() };
    // power sums p_n = n! ch_n
    let mut p: Vec<R> = Vec::with_capacity(k);
    for n in 1..=k {
        let mut acc = e(n).scale(&Rational::from_integer(BigInt::from(n)));
        for i in 1..n {
            let term = e(n - i).mul(&p[i - 1])?;
            acc = acc.sub(&term.scale(&sign(i - 1)));
        }
        p.push(acc.scale(&sign(n - 1)));
    }
    Ok(p
        .into_iter()
        .enumerate()
        .map(|(i, pi)| pi.scale(&Rational::new(BigInt::one(), factorial(i as u32 + 1))))
        .collect())
}
