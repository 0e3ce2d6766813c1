use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::ChernError;
use crate::algebra::{binomial, ch_from_chern, factorial, rint, Monomial, Poly, Rational};
use crate::tautring::{Ambient, TautClass};

/// Polynomial in `λ_1..λ_g`; variable `i` of the underlying [`Poly`] is `λ_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeExpression {
    pub g: u32,
    pub poly: Poly,
    pub reduced: bool,
}

impl HodgeExpression {
    pub fn lambda(g: u32, i: u32) -> Self {
        HodgeExpression { g, poly: Poly::var(i as usize - 1), reduced: false }
    }

    /// Coefficient of `Π λ_i^{e_i}` given as `[(i, e_i)]`.
    pub fn coeff(&self, mono: &[(u32, u32)]) -> Rational {
        let mut exps = vec![0; mono.iter().map(|(i, _)| *i as usize).max().unwrap_or(0)];
        for &(i, e) in mono {
            exps[i as usize - 1] += e;
        }
        self.poly.coeff(&Monomial::new(exps))
    }
}

impl fmt::Display for HodgeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(|i| format!("lambda{}", i + 1)))
    }
}

fn lambda_degree(m: &Monomial) -> u32 {
    m.weighted_degree(|i| i as u32 + 1)
}

/// Power sums `P_0..P_m` of the Chern roots of the Hodge bundle in terms of `λ`.
pub fn hodge_power_sums(g: u32, m: u32) -> Result<Vec<Poly>, ChernError> {
    let c: Vec<Poly> = (1..=m).map(|i| if i <= g { Poly::var(i as usize - 1) } else { Poly::zero() }).collect();
    let ch = ch_from_chern(&c, m as usize)?;
    let mut out = vec![Poly::constant(rint(g as i64))];
    for (k, x) in ch.into_iter().enumerate() {
        out.push(x.scale_by(&Rational::from_integer(factorial(k as u32 + 1))));
    }
    Ok(out)
}

/// `ch_m(S^2 E^∨)` in terms of `λ`, raw or reduced modulo the vanishing of the
/// even power sums `P_2, P_4, ...`.
pub fn ch_tangent_ag(g: u32, m: u32, reduced: bool) -> Result<HodgeExpression, ChernError> {
    let p = hodge_power_sums(g, m)?;
    let mut acc = Poly::zero();
    for k in 0..=m {
        let c = Rational::from_integer(binomial(m as u64, k as u64));
        acc = acc.plus(&p[k as usize].product(&p[(m - k) as usize]).scale_by(&c));
    }
    acc = acc.plus(&p[m as usize].scale_by(&Rational::from_integer(num_bigint::BigInt::from(2).pow(m))));
    let sign = if m.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let coef = sign / Rational::from_integer(factorial(m)) / rint(2);
    let poly = acc.scale_by(&coef);
    let expr = HodgeExpression { g, poly, reduced: false };
    Ok(if reduced { reduce_hodge(&expr)? } else { expr })
}

/// Normal form modulo the ideal generated by `P_{2k}`, `k ≥ 1`, using the
/// lexicographic order with `λ_1` largest.
pub fn reduce_hodge(e: &HodgeExpression) -> Result<HodgeExpression, ChernError> {
    let max_deg = e.poly.terms().map(|(m, _)| lambda_degree(m)).max().unwrap_or(0);
    let p = hodge_power_sums(e.g, max_deg.max(2))?;
    let mut out = Poly::zero();
    for d in 0..=max_deg {
        let mut part = Poly::zero();
        for (m, c) in e.poly.terms() {
            if lambda_degree(m) == d {
                part.add_term(m.clone(), c.clone());
            }
        }
        if part.is_zero() {
            continue;
        }
        let basis = relation_basis(e.g, d, &p);
        out = out.plus(&reduce_by(&part, &basis));
    }
    Ok(HodgeExpression { g: e.g, poly: out, reduced: true })
}

/// Monomials `Π λ_i^{e_i}` of weighted degree `d` with `i ≤ g`.
fn monomials(g: u32, d: u32) -> Vec<Monomial> {
    fn rec(g: u32, i: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i > g {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * i <= left {
            cur.push(e);
            rec(g, i + 1, left - e * i, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(g, 1, d, &mut Vec::new(), &mut out);
    out
}

/// Echelon basis of the degree-`d` part of the relation ideal, keyed by leading monomial.
fn relation_basis(g: u32, d: u32, p: &[Poly]) -> BTreeMap<Monomial, Poly> {
    let mut basis: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for k in (2..=d).step_by(2) {
        for mono in monomials(g, d - k) {
            let mut r = p[k as usize].product(&Poly::monomial(mono));
            r = reduce_by(&r, &basis);
            if let Some((lead, c)) = r.leading() {
                let r = r.scale_by(&(Rational::one() / c));
                let lead = lead.clone();
                // keep the basis fully reduced
                let keys: Vec<Monomial> = basis.keys().cloned().collect();
                for key in keys {
                    let b = basis[&key].clone();
                    let c = b.coeff(&lead);
                    if !c.is_zero() {
                        basis.insert(key, b.plus(&r.scale_by(&-c)));
                    }
                }
                basis.insert(lead, r);
            }
        }
    }
    basis
}

fn reduce_by(x: &Poly, basis: &BTreeMap<Monomial, Poly>) -> Poly {
    let mut r = x.clone();
    for (lead, b) in basis.iter().rev() {
        let c = r.coeff(lead);
        if !c.is_zero() {
            r = r.plus(&b.scale_by(&-c));
        }
    }
    r
}

/// First Chern class `a λ_1 + b D` of a bundle on a toroidal compactification,
/// `D` the irreducible boundary divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDivisor {
    pub lambda1: Rational,
    pub boundary: Rational,
}

impl LogDivisor {
    pub fn negate(&self) -> Self {
        LogDivisor { lambda1: -self.lambda1.clone(), boundary: -self.boundary.clone() }
    }

    /// Pullback along the extended Torelli map: `λ_1 ↦ λ_1`, `D ↦ δ_irr`.
    pub fn pullback_torelli(&self, amb: &Ambient) -> TautClass {
        TautClass::lambda(amb, 0, 1).scale(&self.lambda1).add(&TautClass::delta_irr(amb, 0).scale(&self.boundary))
    }
}

impl fmt::Display for LogDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(0), self.lambda1.clone());
        p.add_term(Monomial::var(1), self.boundary.clone());
        write!(f, "{}", p.display_with(|i| if i == 0 { "lambda1".into() } else { "D".into() }))
    }
}

/// `c_1(Ω)` on the torus-rank-one partial compactification of `A_g`:
/// `c_1(S^2 E) - [D] = (g+1) λ_1 - D`.
pub fn c1_log_abar(g: u32) -> LogDivisor {
    LogDivisor { lambda1: rint(g as i64 + 1), boundary: -Rational::one() }
}
