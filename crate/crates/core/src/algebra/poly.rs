use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{fmt_rational, AlgebraError, Rational, Ring};

/// Exponent vector with trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    /// Weighted degree with variable `i` of weight `weights(i)`.
    pub fn weighted_degree(&self, weight: impl Fn(usize) -> u32) -> u32 {
        self.0.iter().enumerate().map(|(i, e)| e * weight(i)).sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        (0..self.0.len()).all(|i| self.exp(i) <= other.exp(i))
    }

    pub fn div(&self, other: &Self) -> Self {
        Monomial::new((0..self.0.len()).map(|i| self.exp(i) - other.exp(i)).collect())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(i), Rational::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.product(self))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, Rational::one());
        p
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale_by(&-Rational::one()))
    }

    pub fn scale_by(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Largest monomial in lexicographic order with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (m, c.clone()))
    }

    /// Evaluates by substituting `values[i]` for variable `i` inside another polynomial ring.
    pub fn substitute(&self, values: &[Poly]) -> Poly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.product(&values[i].pow(e));
                }
            }
            out = out.plus(&t);
        }
        out
    }

    /// Writes the polynomial with variable names from `name`.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect();
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rational(&abs));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|i| format!("x{}", i + 1)))
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(Rational::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.product(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{chern_from_ch, rat};

    #[test]
    fn line_bundle_identity() {
        let t = Poly::var(0);
        let ch = vec![t.clone(), t.pow(2).scale(&rat(1, 2)), t.pow(3).scale(&rat(1, 6))];
        let c = chern_from_ch(&ch, 3).unwrap();
        assert_eq!(c[0], t);
        assert!(c[1].is_zero() && c[2].is_zero());
    }

    #[test]
    fn display() {
        let p = Poly::var(0).pow(2).scale(&rat(-3, 2)).add(&Poly::var(1));
        assert_eq!(p.display_with(|i| format!("l{}", i + 1)), "-3/2*l1^2 + l2");
    }
}
