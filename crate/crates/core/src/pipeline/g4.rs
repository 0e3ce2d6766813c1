use num_traits::One;

use super::{multiple_of, ContributionLedger, PipelineError};
use crate::algebra::{rat, Rational};
use crate::chern::{ch_tangent_ag, chern_tangent_moduli, HodgeExpression};
use crate::excess::{multiplicity, verify_residual_model, ExcessDims};
use crate::tautring::{Ambient, Factor, Mono, OneEdgeGluing, Policy, TautClass, TautError};

/// Ambients of the components of the compact-type fiber product in genus 4
/// together with the two projections of each.
#[derive(Clone, Debug)]
pub struct G4Maps {
    pub m4: Ambient,
    /// `M_{1,p} × M_{3,{q,y}}`: the first curve glues `p~q`, the second `p~y`.
    pub xa: Ambient,
    /// `M_{2,{p,x}} × M_{2,{q,y}}`: the first curve glues `p~q`, the second `x~y`.
    pub xb: Ambient,
}

impl G4Maps {
    pub fn new(policy: Policy) -> Result<Self, TautError> {
        let m4 = Ambient::mgn(4, 0, policy)?;
        let xa = Ambient::new(vec![Factor::new(1, &["p"]), Factor::new(3, &["q", "y"])], policy)?;
        let xb = Ambient::new(vec![Factor::new(2, &["p", "x"]), Factor::new(2, &["q", "y"])], policy)?;
        Ok(Self { m4, xa, xb })
    }

    pub fn a_pull1(&self, c: &TautClass) -> Result<TautClass, TautError> {
        let gl = OneEdgeGluing::new(&self.m4, 0, 1, &[], "p", "q")?;
        gl.pullback(c)?.pullback_forgetful("y", 1)?.with_ambient(&self.xa)
    }

    pub fn a_pull2(&self, c: &TautClass) -> Result<TautClass, TautError> {
        let gl = OneEdgeGluing::new(&self.m4, 0, 1, &[], "p", "y")?;
        gl.pullback(c)?.pullback_forgetful("q", 1)?.with_ambient(&self.xa)
    }

    pub fn a_push1(&self, c: &TautClass) -> Result<TautClass, TautError> {
        c.pushforward_forgetful("y")?.pushforward_gluing("p", "q")?.with_ambient(&self.m4)
    }

    pub fn b_pull1(&self, c: &TautClass) -> Result<TautClass, TautError> {
        let gl = OneEdgeGluing::new(&self.m4, 0, 2, &[], "p", "q")?;
        gl.pullback(c)?.pullback_forgetful("x", 0)?.pullback_forgetful("y", 1)?.with_ambient(&self.xb)
    }

    pub fn b_pull2(&self, c: &TautClass) -> Result<TautClass, TautError> {
        let gl = OneEdgeGluing::new(&self.m4, 0, 2, &[], "x", "y")?;
        gl.pullback(c)?.pullback_forgetful("p", 0)?.pullback_forgetful("q", 1)?.with_ambient(&self.xb)
    }

    pub fn b_push1(&self, c: &TautClass) -> Result<TautClass, TautError> {
        c.pushforward_forgetful("x")?.pushforward_forgetful("y")?.pushforward_gluing("p", "q")?.with_ambient(&self.m4)
    }

    /// `δ_A`: the divisor of curves with an elliptic tail.
    pub fn delta_a(&self) -> Result<TautClass, TautError> {
        TautClass::delta_split(&self.m4, 0, 1, &[])
    }

    /// `δ_B`: the divisor of two genus-2 components.
    pub fn delta_b(&self) -> Result<TautClass, TautError> {
        TautClass::delta_split(&self.m4, 0, 2, &[])
    }
}

/// Interior Hodge polynomial as a class on factor `f`.
pub(crate) fn hodge_class(amb: &Ambient, f: usize, e: &HodgeExpression) -> TautClass {
    let mut out = TautClass::zero(amb);
    for (m, c) in e.poly.terms() {
        let mono = Mono::from_factors(
            m.exps().iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i as u32 + 1, k as usize)),
        );
        out = out.add(&TautClass::lambda_mono(amb, f, &mono).scale(c));
    }
    out
}

fn single(g: u32, marks: &[&str], policy: Policy) -> Result<Ambient, TautError> {
    Ambient::single(g, marks, policy)
}

/// Chern classes `c_1, c_2` of the tangent bundle of a product of two factors.
fn product_chern(a: &Ambient, b: &Ambient, k: usize) -> Result<Vec<TautClass>, PipelineError> {
    let ca = chern_tangent_moduli(a, k)?;
    let cb = chern_tangent_moduli(b, k)?;
    let (ua, ub) = (TautClass::unit(a), TautClass::unit(b));
    let mut out = vec![ca[0].external_product(&ub)?.add(&ua.external_product(&cb[0])?)];
    if k >= 2 {
        let c2 = ca[1]
            .external_product(&ub)?
            .add(&ca[0].external_product(&cb[0])?)
            .add(&ua.external_product(&cb[1])?);
        out.push(c2);
    }
    Ok(out)
}

/// Diagonal term `c_1(N) = t^*c_1(TA_4) - c_1(TM_4)`.
pub(crate) fn diagonal(m4: &Ambient) -> Result<TautClass, PipelineError> {
    let ag1 = hodge_class(m4, 0, &ch_tangent_ag(4, 1, false)?);
    let c1 = chern_tangent_moduli(m4, 1)?.remove(0);
    Ok(ag1.sub(&c1))
}

/// `p_1*` of the excess class on the elliptic-tail component.
pub(crate) fn component_a(maps: &G4Maps) -> Result<TautClass, PipelineError> {
    let m4 = &maps.m4;
    let ag1 = hodge_class(m4, 0, &ch_tangent_ag(4, 1, false)?);
    let c1 = chern_tangent_moduli(m4, 1)?.remove(0);
    let policy = m4.policy;
    let tx = product_chern(&single(1, &["p"], policy)?, &single(3, &["q", "y"], policy)?, 1)?.remove(0);
    let tx = tx.with_ambient(&maps.xa)?;
    let excess = maps.a_pull1(&ag1)?.sub(&maps.a_pull1(&c1)?).sub(&maps.a_pull2(&c1)?).add(&tx);
    Ok(maps.a_push1(&excess)?)
}

/// The three pushforwards making up the genus-2 pair component, before halving.
pub(crate) fn component_b_terms(maps: &G4Maps) -> Result<[TautClass; 3], PipelineError> {
    let m4 = &maps.m4;
    let policy = m4.policy;
    let cm = chern_tangent_moduli(m4, 2)?;
    let tx = product_chern(&single(2, &["p", "x"], policy)?, &single(2, &["q", "y"], policy)?, 2)?;
    let c1x = tx[0].with_ambient(&maps.xb)?;
    let c2x = tx[1].with_ambient(&maps.xb)?;
    let t1 = maps.b_push1(&c2x)?;
    let t2 = maps.b_push1(&maps.b_pull2(&cm[1])?)?.neg();
    let p2c1 = maps.b_pull2(&cm[0])?;
    let t3 = maps.b_push1(&p2c1.multiply(&p2c1.sub(&c1x))?)?;
    Ok([t1, t2, t3])
}

fn mismatch(what: &str, got: &TautClass, ledger: &ContributionLedger) -> PipelineError {
    PipelineError::Mismatch { what: what.into(), got: got.pretty(), ledger: ledger.to_string() }
}

/// `t^*T_4` on the compact-type moduli space with its labeled contributions.
pub fn t_pullback_g4() -> Result<(TautClass, ContributionLedger), PipelineError> {
    let maps = G4Maps::new(Policy::CompactType)?;
    let ledger = g4_ledger(&maps)?;
    let total = ledger.total().expect("non-empty ledger");
    let lambda1 = TautClass::lambda(&maps.m4, 0, 1);
    if multiple_of(&total, &lambda1).is_none() {
        return Err(mismatch("boundary terms do not cancel", &total, &ledger));
    }
    Ok((total, ledger))
}

pub(crate) fn g4_ledger(maps: &G4Maps) -> Result<ContributionLedger, PipelineError> {
    let one = Rational::one();
    let mut ledger = ContributionLedger::default();
    let diag = diagonal(&maps.m4)?;
    ledger.push("Delta+", "diagonal: t*c1(TA4) - c1(TM4)", diag.clone(), one.clone());
    ledger.push("Delta-", "diagonal composed with -1: t*c1(TA4) - c1(TM4)", diag, one.clone());

    let a = component_a(maps)?;
    ledger.push("A+", "elliptic tail reattached: p1*(c1 excess)", a.clone(), one.clone());
    ledger.push("A-", "elliptic tail reattached, opposite sign: p1*(c1 excess)", a, one.clone());

    let [t1, t2, t3] = component_b_terms(maps)?;
    let b = t1.add(&t2).add(&t3).scale(&rat(1, 2));
    ledger.push("B", "genus-2 pairs: (p1*c2(TX) - p1*p2^*c2(TM4) + p1*[p2^*c1 (p2^*c1 - c1(TX))]) / 2", b, one);

    let m11 = Rational::from_integer(multiplicity(ExcessDims { d_a: 1, d_b: 1 }));
    let m21 = Rational::from_integer(multiplicity(ExcessDims { d_a: 2, d_b: 1 }));
    let residual = verify_residual_model()?.residual_part;

    let za = maps.a_push1(&TautClass::delta_0(&maps.xa, "q", "y")?)?;
    ledger.push("Z1", "A meets Delta+, excess m(1,1)", za.clone(), m11.clone());
    ledger.push("Z2", "A meets Delta-, excess m(1,1)", za, m11);

    let dpx = TautClass::delta_0(&maps.xb, "p", "x")?;
    let dqy = TautClass::delta_0(&maps.xb, "q", "y")?;
    let zb = maps.b_push1(&dpx.multiply(&dqy)?)?.scale(&rat(1, 2));
    ledger.push("Z3", "B meets Delta+, excess m(2,1)", zb.clone(), m21.clone());
    ledger.push("Z4", "B meets Delta-, excess m(2,1)", zb, m21);

    let db = maps.delta_b()?;
    ledger.push("Z5", "conjugate-point locus in B, residual model", db.clone(), residual.clone());
    ledger.push("Z6", "conjugate-point locus in B, residual model", db, residual);
    Ok(ledger)
}
