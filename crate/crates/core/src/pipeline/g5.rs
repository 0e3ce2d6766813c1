use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::PipelineError;
use crate::algebra::{chern_from_ch, factorial, rat, rint, Monomial, Poly, Rational};
use crate::chern::{ch_tangent_ag, ch_tangent_moduli, HodgeExpression};
use crate::constants;
use crate::excess::{multiplicity, ExcessDims};
use crate::tautring::{Ambient, Policy, TautClass};

const GENUS: u32 = 5;

/// Variable layout: `λ_1..λ_3` are 0..2, `κ_1..κ_3` are 3..5.
fn lambda_var(i: u32) -> usize {
    i as usize - 1
}

fn kappa_var(i: u32) -> usize {
    i as usize + 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G5Report {
    /// Interior `ch_1..ch_3(TM_5)` with `κ_1` expanded, in `λ`, `κ`.
    pub ch_tm: Vec<Poly>,
    /// `ch_1..ch_3(TA_5)` in `λ`, not reduced.
    pub ch_ta: Vec<HodgeExpression>,
    pub ch_normal: Vec<Poly>,
    /// `2 c_3(N)` as a multiple of `κ_3`.
    pub twice_c3: Rational,
    pub multiplicity: Rational,
    pub hyperelliptic: Rational,
    /// `t^*T_5|_{M_5}` as a multiple of `κ_3`.
    pub final_kappa3: Rational,
}

/// Interior part of a single-factor class as a polynomial in `λ`, `κ`.
fn interior_poly(c: &TautClass) -> Poly {
    let mut out = Poly::zero();
    for (g, coef) in c.restrict_interior().terms() {
        let v = &g.vertices[0];
        let mut exps = vec![0u32; 6];
        for (i, e) in &v.lambda.0 {
            exps[lambda_var(*i)] += e;
        }
        for (i, e) in &v.kappa.0 {
            exps[kappa_var(*i)] += e;
        }
        out.add_term(Monomial::new(exps), coef.clone());
    }
    out
}

/// Rewrites `λ` in terms of `κ` on `M_g` for `g = 5` through degree three:
/// `λ_1 = κ_1/12`, `ch_2(E) = 0`, `ch_3(E) = -κ_3/720`.
fn mumford_substitution() -> Vec<Poly> {
    let k1 = Poly::var(kappa_var(1));
    let l1 = k1.scale_by(&rat(1, 12));
    let l2 = l1.pow(2).scale_by(&rat(1, 2));
    let l3 = l1.pow(3).scale_by(&rat(1, 6)).minus(&Poly::var(kappa_var(3)).scale_by(&rat(1, 360)));
    vec![l1, l2, l3, k1, Poly::var(kappa_var(2)), Poly::var(kappa_var(3))]
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(n - 1);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![n - 1]);
        out.push(q);
    }
    out
}

/// Proportionality `κ_{d_1}⋯κ_{d_n} = c κ_{g-2}` in `R^{g-2}(M_g)`, with
/// `Σ d_i = g - 2`, from the symmetric sums
/// `Σ_{σ ∈ S_n} κ_σ = (2g-3+n)! (2g-1)!! / ((2g-1)! Π (2d_j+1)!!) κ_{g-2}`.
pub fn faber_kappa(g: u32, parts: &[u32]) -> Rational {
    let mut memo = BTreeMap::new();
    faber_rec(g, parts, &mut memo)
}

fn double_factorial(n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut k = n;
    while k > 1 {
        acc *= rint(k as i64);
        k -= 2;
    }
    acc
}

fn faber_rec(g: u32, parts: &[u32], memo: &mut BTreeMap<Vec<u32>, Rational>) -> Rational {
    let mut key = parts.to_vec();
    key.sort();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let n = key.len();
    let mut rhs = Rational::from_integer(factorial(2 * g - 3 + n as u32)) * double_factorial(2 * g as u64 - 1)
        / Rational::from_integer(factorial(2 * g - 1));
    for d in &key {
        rhs /= double_factorial(2 * *d as u64 + 1);
    }
    for p in set_partitions(n) {
        if p.len() == n {
            continue;
        }
        let weight: Rational = p.iter().map(|b| Rational::from_integer(factorial(b.len() as u32 - 1))).product();
        let merged: Vec<u32> = p.iter().map(|b| b.iter().map(|&i| key[i]).sum()).collect();
        rhs -= weight * faber_rec(g, &merged, memo);
    }
    memo.insert(key, rhs.clone());
    rhs
}

/// Degree-3 polynomial in `κ` reduced to a multiple of `κ_3`.
fn to_kappa3(p: &Poly) -> Option<Rational> {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut parts = Vec::new();
        for (v, &e) in m.exps().iter().enumerate() {
            if v < 3 && e > 0 {
                return None;
            }
            for _ in 0..e {
                parts.push(v as u32 - 2);
            }
        }
        if parts.iter().sum::<u32>() != GENUS - 2 {
            return None;
        }
        acc += c * faber_kappa(GENUS, &parts);
    }
    Some(acc)
}

/// `t^*T_5` restricted to `M_5` as a multiple of `κ_3`.
pub fn t_pullback_g5() -> Result<(Rational, G5Report), PipelineError> {
    let amb = Ambient::mgn(GENUS, 0, Policy::CompactType)?;
    let sub = mumford_substitution();
    let mut ch_normal = Vec::new();
    let mut ch_tm = Vec::new();
    let mut ch_ta = Vec::new();
    for m in 1..=3u32 {
        ch_tm.push(interior_poly(&ch_tangent_moduli(&amb, m)?.kappa1_expand()));
        ch_ta.push(ch_tangent_ag(GENUS, m, false)?);
        let ag = ch_tangent_ag(GENUS, m, false)?.poly;
        let mut vals = sub[..3].to_vec();
        vals.resize(GENUS as usize, Poly::zero());
        let ag = ag.substitute(&vals);
        let tm = interior_poly(&ch_tangent_moduli(&amb, m)?).substitute(&sub);
        ch_normal.push(ag.minus(&tm));
    }
    let c = chern_from_ch(&ch_normal, 3).map_err(crate::chern::ChernError::from)?;
    let twice = c[2].scale_by(&rint(2));
    let twice_c3 = to_kappa3(&twice).ok_or_else(|| PipelineError::Mismatch {
        what: "c3(N) does not reduce to a multiple of kappa3".into(),
        got: twice.display_with(var_name),
        ledger: String::new(),
    })?;
    let multiplicity = Rational::from_integer(multiplicity(ExcessDims { d_a: 3, d_b: 3 }));
    let hyperelliptic = constants::hyperelliptic_locus_g5();
    let final_kappa3 = &twice_c3 + &multiplicity * &hyperelliptic;
    let report = G5Report { ch_tm, ch_ta, ch_normal, twice_c3, multiplicity, hyperelliptic, final_kappa3: final_kappa3.clone() };
    Ok((final_kappa3, report))
}

/// Name of variable `i` in the layout used by [`G5Report`].
pub fn var_name(i: usize) -> String {
    if i < 3 {
        format!("lambda{}", i + 1)
    } else {
        format!("kappa{}", i - 2)
    }
}
