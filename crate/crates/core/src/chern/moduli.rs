use num_traits::{One, Zero};

use super::ChernError;
use crate::algebra::{bernoulli_polynomial, binomial, chern_from_ch, factorial, rint, Rational};
use crate::tautring::{one_edge_graphs, Ambient, TautClass};

/// Largest Chern class degree produced by [`chern_tangent_moduli`].
pub const CHERN_DEGREE_CAP: usize = 3;

fn connected(amb: &Ambient) -> Result<(), ChernError> {
    if amb.factors.len() != 1 {
        return Err(ChernError::NotSingleFactor);
    }
    Ok(())
}

fn bern_coeff(m: u32, x: i64) -> Result<Rational, ChernError> {
    let b = bernoulli_polynomial((m + 1) as usize, &rint(x))?;
    Ok(b / Rational::from_integer(factorial(m + 1)))
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `ch_m` of the logarithmic cotangent bundle, from Chiodo's formula.
///
/// The boundary polynomial `(ψ^m + (-1)^{m-1} ψ̄^m)/(ψ + ψ̄)` is expanded as
/// `Σ_{i<m} ψ^i (-ψ̄)^{m-1-i}`.
pub fn ch_log_cotangent(amb: &Ambient, m: u32) -> Result<TautClass, ChernError> {
    connected(amb)?;
    if m == 0 {
        return Err(ChernError::ZeroDegree);
    }
    let a = bern_coeff(m, 2)?;
    let b = bern_coeff(m, 1)?;
    let mut out = TautClass::kappa(amb, 0, m).scale(&a);
    for p in &amb.factors[0].markings {
        out = out.sub(&TautClass::psi(amb, p, m)?.scale(&b));
    }
    if !b.is_zero() {
        for (g, w) in one_edge_graphs(amb, 0) {
            for i in 0..m {
                let mut d = g.clone();
                d.edges[0].a.psi = i;
                d.edges[0].b.psi = m - 1 - i;
                let c = &b * &w * sign(m - 1 - i);
                out = out.add(&TautClass::generator(amb, d, c)?);
            }
        }
    }
    Ok(out)
}

/// `ch_m` of the sum of structure sheaves of boundary divisors:
/// `Σ_Γ ξ_Γ*((ψ + ψ̄)^{m-1}/m!)/|Aut Γ|`.
pub fn ch_structure_sheaves(amb: &Ambient, m: u32) -> Result<TautClass, ChernError> {
    connected(amb)?;
    let mut out = TautClass::zero(amb);
    if m == 0 {
        return Ok(out);
    }
    let fact = Rational::from_integer(factorial(m));
    for (g, w) in one_edge_graphs(amb, 0) {
        for j in 0..m {
            let mut d = g.clone();
            d.edges[0].a.psi = j;
            d.edges[0].b.psi = m - 1 - j;
            let c = Rational::from_integer(binomial((m - 1) as u64, j as u64)) * &w / &fact;
            out = out.add(&TautClass::generator(amb, d, c)?);
        }
    }
    Ok(out)
}

/// `ch_m(T) = (-1)^m (ch_m(Ω^log) - ch_m(⊕ O_Γ))`.
pub fn ch_tangent_moduli(amb: &Ambient, m: u32) -> Result<TautClass, ChernError> {
    let omega = ch_log_cotangent(amb, m)?.sub(&ch_structure_sheaves(amb, m)?);
    Ok(omega.scale(&sign(m)))
}

/// Chern classes `c_1..c_k` of the tangent bundle, `κ_1` expanded.
pub fn chern_tangent_moduli(amb: &Ambient, k: usize) -> Result<Vec<TautClass>, ChernError> {
    if k > CHERN_DEGREE_CAP {
        return Err(ChernError::DegreeBeyond(k));
    }
    let ch: Vec<TautClass> =
        (1..=k as u32).map(|m| ch_tangent_moduli(amb, m).map(|c| c.kappa1_expand())).collect::<Result<_, _>>()?;
    let c = chern_from_ch(&ch, k)?;
    Ok(c.into_iter().map(|x| x.kappa1_expand()).collect())
}
