use num_traits::One;

use super::g4::{g4_ledger, G4Maps};
use super::{multiple_of, ContributionLedger, PipelineError};
use crate::algebra::Rational;
use crate::chern::{c1_log_abar, chern_tangent_moduli, LogDivisor};
use crate::tautring::{Policy, TautClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abar4Result {
    /// `t^* t_*[M̄_4]` on the curve side.
    pub curve_side: TautClass,
    /// The same class in the basis `λ_1`, `D`.
    pub divisor: LogDivisor,
    pub ledger: ContributionLedger,
}

/// Extends the genus-4 computation over curves with at most one nonseparating node.
pub fn t_pushforward_abar4() -> Result<Abar4Result, PipelineError> {
    let maps = G4Maps::new(Policy::Stable)?;
    let m4 = &maps.m4;
    let ct = G4Maps::new(Policy::CompactType)?;
    let ct_ledger = g4_ledger(&ct)?;

    let c1 = chern_tangent_moduli(m4, 1)?.remove(0);
    let diag = c1_log_abar(4).negate().pullback_torelli(m4).sub(&c1);
    let mut ledger = ContributionLedger::default();
    let one = Rational::one();
    ledger.push("Delta+", "diagonal: t*c1(TA4(-log D)) - c1(TM4)", diag.clone(), one.clone());
    ledger.push("Delta-", "diagonal composed with -1: t*c1(TA4(-log D)) - c1(TM4)", diag, one);
    for e in ct_ledger.entries.iter().filter(|e| !e.source.starts_with("Delta")) {
        ledger.push(&e.source, &e.anchor, e.class.with_ambient(m4)?, e.multiplicity.clone());
    }
    let total = ledger.total().expect("non-empty ledger");
    let lambda1 = TautClass::lambda(m4, 0, 1);
    let irr = TautClass::delta_irr(m4, 0);
    let a = multiple_of(&total.restrict_interior(), &lambda1);
    let b = multiple_of(&total.sub(&total.restrict_interior()), &irr);
    match (a, b) {
        (Some(a), Some(b)) => Ok(Abar4Result {
            curve_side: total,
            divisor: LogDivisor { lambda1: a, boundary: b },
            ledger,
        }),
        _ => Err(PipelineError::Mismatch {
            what: "class is not a combination of lambda1 and delta_irr".into(),
            got: total.pretty(),
            ledger: ledger.to_string(),
        }),
    }
}
