//! Superactivation of `C̄₀` / `Q̄₀` for a pair of channels, and the index ri₂.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Error;
use crate::rank1::certificate::Subject;
use crate::subspace::Subspace;
use crate::zeroerr::ledger::{ledger_with_graphs, ChannelGraph, FiredClause, LedgerChannel, NonSuperactivationLedger};
use crate::zeroerr::{cbar0_positive, qbar0_positive, Capacity, PositivityVerdict, Route, Status, ZeroErrorContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    NoneProven,
    Classical,
    Quantum,
    Extreme,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictPair {
    pub cbar0: PositivityVerdict,
    pub qbar0: PositivityVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperactivationReport {
    pub kind: Kind,
    pub components: [VerdictPair; 2],
    pub tensor: VerdictPair,
    pub blockers: Vec<FiredClause>,
    #[serde(skip)]
    pub ledger: NonSuperactivationLedger,
}

impl SuperactivationReport {
    /// Re-check every sub-verdict that is not a ledger consequence against its subject.
    pub fn verify(&self, g1: &Subspace, g2: &Subspace) -> Result<(), Error> {
        let s = [Subject::Space { space: g1.clone() }, Subject::Space { space: g2.clone() }];
        for (pair, subject) in self.components.iter().zip(&s) {
            pair.cbar0.verify(subject)?;
            pair.qbar0.verify(subject)?;
        }
        let t = Subject::Tensor { left: g1.clone(), right: g2.clone() };
        for v in [&self.tensor.cbar0, &self.tensor.qbar0] {
            match v.route {
                Route::Blocked => {
                    let blocked = match v.capacity {
                        Capacity::Cbar0 => self.ledger.classical_blocked && self.components.iter().all(|c| c.cbar0.is_zero()),
                        Capacity::Qbar0 => self.ledger.quantum_blocked && self.components.iter().all(|c| c.qbar0.is_zero()),
                    };
                    if !blocked {
                        return Err(Error::Certificate("tensor verdict claims a blocking clause that does not apply".into()));
                    }
                }
                Route::NotEvaluated => {}
                _ => v.verify(&t)?,
            }
        }
        Ok(())
    }
}

fn not_evaluated(capacity: Capacity) -> PositivityVerdict {
    PositivityVerdict::new(capacity, Status::Undecided, Route::NotEvaluated)
}

fn blocked(capacity: Capacity, ledger: &NonSuperactivationLedger) -> PositivityVerdict {
    let ids: Vec<&str> = ledger.clauses.iter().filter(|c| c.capacity == capacity || c.id == "4C" || c.id == "4D").map(|c| c.id).collect();
    PositivityVerdict::new(capacity, Status::Zero, Route::Blocked).with_note(format!("clauses {}", ids.join(", ")))
}

fn finite<'a>(ch: &'a LedgerChannel<'a>) -> Result<&'a dyn ChannelGraph, Error> {
    match ch {
        LedgerChannel::Finite { channel, .. } => Ok(*channel),
        LedgerChannel::Gaussian(_) => Err(Error::Invalid("Gaussian pairs are classified by gaussian_nonsuperactivation".into())),
    }
}

fn components(g: &Subspace, ctx: &ZeroErrorContext) -> Result<VerdictPair, Error> {
    let s = Subject::Space { space: g.clone() };
    Ok(VerdictPair { cbar0: cbar0_positive(&s, ctx)?, qbar0: qbar0_positive(&s, ctx)? })
}

/// Component verdicts, the ledger, then only those product verdicts that can change the kind.
///
/// The strongest proven kind wins: EXTREME, then CLASSICAL, then QUANTUM.
pub fn superactivation_check(
    first: &LedgerChannel<'_>,
    second: &LedgerChannel<'_>,
    ctx: &ZeroErrorContext,
    budget: Option<Duration>,
) -> Result<SuperactivationReport, Error> {
    let limited;
    let ctx = match budget {
        Some(b) => {
            let mut c = ctx.clone();
            c.config.deadline = Some(Instant::now() + b);
            limited = c;
            &limited
        }
        None => ctx,
    };
    let (g1, g2) = (finite(first)?.graph(), finite(second)?.graph());
    let comps = [components(&g1, ctx)?, components(&g2, ctx)?];
    let ledger = ledger_with_graphs(first, Some(second), [Some(&g1), Some(&g2)]);
    let t = Subject::Tensor { left: g1.clone(), right: g2.clone() };

    let c_zero = comps.iter().all(|c| c.cbar0.is_zero());
    let q_zero = comps.iter().all(|c| c.qbar0.is_zero());
    let mut tq = not_evaluated(Capacity::Qbar0);
    let mut tc = not_evaluated(Capacity::Cbar0);
    if q_zero {
        tq = if ledger.quantum_blocked { blocked(Capacity::Qbar0, &ledger) } else { qbar0_positive(&t, ctx)? };
    }
    if c_zero {
        tc = if ledger.classical_blocked {
            blocked(Capacity::Cbar0, &ledger)
        } else if tq.is_positive() {
            let mut v = PositivityVerdict::new(Capacity::Cbar0, Status::Positive, Route::FromQuantumWitness);
            v.witness = tq.witness.clone();
            v
        } else {
            cbar0_positive(&t, ctx)?
        };
    }
    if tq.is_positive() && tq.route != Route::Blocked {
        tq.verify(&t)?;
    }
    if tc.is_positive() {
        tc.verify(&t)?;
    }

    let kind = if c_zero && tq.is_positive() {
        Kind::Extreme
    } else if c_zero && tc.is_positive() {
        Kind::Classical
    } else if q_zero && tq.is_positive() {
        Kind::Quantum
    } else {
        let comp_open = comps.iter().any(|c| c.cbar0.status == Status::Undecided || c.qbar0.status == Status::Undecided);
        let tensor_open = [&tc, &tq].iter().any(|v| v.status == Status::Undecided && v.route != Route::NotEvaluated);
        if comp_open || tensor_open {
            Kind::Undecided
        } else {
            Kind::NoneProven
        }
    };
    Ok(SuperactivationReport {
        kind,
        components: comps,
        tensor: VerdictPair { cbar0: tc, qbar0: tq },
        blockers: ledger.clauses.clone(),
        ledger,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum Ri2 {
    Zero,
    One,
    Two,
    /// Not decided; the index is at least this.
    Undecided { at_least: u8 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ri2Report {
    pub ri2: Ri2,
    pub verdicts: VerdictPair,
}

/// ri₂ = 0 iff `C̄₀ = 0`, ri₂ = 2 iff `Q̄₀ > 0`, and 1 otherwise.
pub fn ri2_classify_subject(subject: &Subject, ctx: &ZeroErrorContext) -> Result<Ri2Report, Error> {
    let c = cbar0_positive(subject, ctx)?;
    let q = if c.is_zero() {
        let mut q = PositivityVerdict::new(Capacity::Qbar0, Status::Zero, Route::ClassicalZero);
        q.certificate = c.certificate.clone();
        q
    } else {
        qbar0_positive(subject, ctx)?
    };
    let ri2 = match (c.status, q.status) {
        (_, Status::Positive) => Ri2::Two,
        (Status::Zero, _) => Ri2::Zero,
        (Status::Positive, Status::Zero) => Ri2::One,
        (Status::Positive, Status::Undecided) => Ri2::Undecided { at_least: 1 },
        _ => Ri2::Undecided { at_least: 0 },
    };
    Ok(Ri2Report { ri2, verdicts: VerdictPair { cbar0: c, qbar0: q } })
}

pub fn ri2_classify(ch: &dyn ChannelGraph, ctx: &ZeroErrorContext) -> Result<Ri2Report, Error> {
    ri2_classify_subject(&Subject::Space { space: ch.graph() }, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::KrausChannel;
    use crate::constructions::fixtures::{l1, l2, l_theorem1};
    use crate::constructions::synthesis::synthesize;
    use crate::rank1::SearchConfig;

    fn ctx() -> ZeroErrorContext {
        ZeroErrorContext::with_fixtures(SearchConfig::default()).unwrap()
    }

    #[test]
    fn theorem1_pair_is_classical() {
        let ctx = ctx();
        let spec = synthesize(&l_theorem1()).unwrap();
        let r = superactivation_check(&LedgerChannel::finite(&spec), &LedgerChannel::finite(&spec), &ctx, None).unwrap();
        assert_eq!(r.kind, Kind::Classical);
        assert!(r.tensor.cbar0.witness.is_some());
        r.verify(&spec.graph(), &spec.graph()).unwrap();
    }

    #[test]
    fn corner_pair_is_extreme() {
        let ctx = ctx();
        let (a, b) = (synthesize(&l1()).unwrap(), synthesize(&l2()).unwrap());
        let r = superactivation_check(&LedgerChannel::finite(&a), &LedgerChannel::finite(&b), &ctx, None).unwrap();
        assert_eq!(r.kind, Kind::Extreme);
        assert!(r.components.iter().all(|c| c.cbar0.is_zero()));
        r.verify(&a.graph(), &b.graph()).unwrap();
    }

    #[test]
    fn qubit_partner_blocks_classical() {
        let ctx = ctx();
        let q = KrausChannel::dephasing(2);
        let spec = synthesize(&l_theorem1()).unwrap();
        let r = superactivation_check(&LedgerChannel::finite(&q), &LedgerChannel::finite(&spec), &ctx, None).unwrap();
        assert!(r.blockers.iter().any(|c| c.id == "3B"));
        assert_ne!(r.kind, Kind::Classical);
        assert_ne!(r.kind, Kind::Extreme);
    }

    #[test]
    fn ri2_examples() {
        let ctx = ctx();
        assert_eq!(ri2_classify(&KrausChannel::identity(3), &ctx).unwrap().ri2, Ri2::Two);
        assert_eq!(ri2_classify(&KrausChannel::dephasing(2), &ctx).unwrap().ri2, Ri2::One);
        let spec = synthesize(&l_theorem1()).unwrap();
        assert_eq!(ri2_classify(&spec, &ctx).unwrap().ri2, Ri2::Zero);
        let t = Subject::Tensor { left: l_theorem1(), right: l_theorem1() };
        let r = ri2_classify_subject(&t, &ctx).unwrap().ri2;
        assert!(matches!(r, Ri2::One | Ri2::Two | Ri2::Undecided { at_least: 1 }), "{r:?}");
    }
}
