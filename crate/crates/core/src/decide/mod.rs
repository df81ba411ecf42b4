//! Satisfiability and validity: a K tableau for one-sided formulas, the
//! complete procedure for the I-free fragment, bounded model search for the
//! full language and an independent brute-force oracle.

mod bounded;
mod ktableau;
mod oracle;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::model::{disjoint_union, Model, ModelError, PointedPair};
use crate::normal::{companion, NormalError};
use crate::semantics::check;
use crate::syntax::Formula;

pub use bounded::{lhs_bounded_sat, lhs_bounded_sat_with, BoundedResult, DEFAULT_SEARCH_CEILING};
pub use ktableau::{k_sat, k_valid, KValidity, KVerdict, KWitness};
pub use oracle::brute_force_sat_oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("formula is neither white-only nor black-only")]
    MixedFormula,
    #[error("formula contains I")]
    ContainsI,
    #[error(transparent)]
    Normal(NormalError),
    #[error("search space of {count} exceeds the ceiling {ceiling}; force to override")]
    ResourceGuard { count: u128, ceiling: u128 },
    #[error("internal error: {0}")]
    Internal(String),
}

impl DecideError {
    pub(crate) fn internal(e: impl std::fmt::Display) -> Self {
        DecideError::Internal(e.to_string())
    }
}

impl From<NormalError> for DecideError {
    fn from(e: NormalError) -> Self {
        match e {
            NormalError::ContainsI => DecideError::ContainsI,
            e => DecideError::Normal(e),
        }
    }
}

impl From<ModelError> for DecideError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::ResourceGuard { count, ceiling } => DecideError::ResourceGuard { count, ceiling },
            e => DecideError::internal(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Valid,
    Invalid,
    Sat,
    Unsat,
}

/// Which disjunct of a companion conjunct `ψᵢ ∨ γᵢ` is K-valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Psi,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: Model,
    pub at: PointedPair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhsVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// One entry per companion conjunct, present for VALID.
    pub certificate: Option<Vec<Certificate>>,
    /// Number of conjuncts of the companion that was decided.
    pub conjuncts: usize,
}

enum ConjunctOutcome {
    Holds(Certificate),
    Fails(Box<(KWitness, KWitness)>),
}

/// Validity in the I-free fragment. The companion `⋀ᵢ(ψᵢ ∨ γᵢ)` is valid
/// exactly when each conjunct has a K-valid side. Otherwise K countermodels
/// for both sides of the first failing conjunct are joined by disjoint
/// union into a countermodel of the input.
pub fn lhs_minus_valid(phi: &Formula) -> Result<LhsVerdict, DecideError> {
    lhs_minus_valid_with(phi, Exec::default())
}

pub fn lhs_minus_valid_with(phi: &Formula, exec: Exec) -> Result<LhsVerdict, DecideError> {
    if phi.contains_eq() {
        return Err(DecideError::ContainsI);
    }
    let comp = companion(phi)?;
    let outcomes = exec.map(&comp.conjuncts, |(psi, gamma)| -> Result<ConjunctOutcome, DecideError> {
        let kp = k_valid(psi)?;
        if kp.is_valid() {
            return Ok(ConjunctOutcome::Holds(Certificate::Psi));
        }
        match (kp, k_valid(gamma)?) {
            (_, KValidity::Valid) => Ok(ConjunctOutcome::Holds(Certificate::Gamma)),
            (KValidity::Invalid(m), KValidity::Invalid(n)) => Ok(ConjunctOutcome::Fails(Box::new((m, n)))),
            (KValidity::Valid, _) => unreachable!("handled above"),
        }
    });
    let mut certificate = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome? {
            ConjunctOutcome::Holds(c) => certificate.push(c),
            ConjunctOutcome::Fails(pair) => {
                let (m, n) = *pair;
                let union = disjoint_union(&m.model, &n.model);
                let at = PointedPair::new(union.embed_left[m.state], union.embed_right[n.state]);
                let witness = Witness {
                    model: union.model,
                    at,
                };
                if check(&witness.model, at, phi).map_err(DecideError::internal)? {
                    return Err(DecideError::Internal(format!(
                        "countermodel does not falsify {phi}"
                    )));
                }
                return Ok(LhsVerdict {
                    status: Status::Invalid,
                    witness: Some(witness),
                    certificate: None,
                    conjuncts: comp.len(),
                });
            }
        }
    }
    Ok(LhsVerdict {
        status: Status::Valid,
        witness: None,
        certificate: Some(certificate),
        conjuncts: comp.len(),
    })
}

/// Satisfiability in the I-free fragment: satisfiable iff the negation is
/// not valid, with the negation's countermodel as the model.
pub fn lhs_minus_sat(phi: &Formula) -> Result<LhsVerdict, DecideError> {
    lhs_minus_sat_with(phi, Exec::default())
}

pub fn lhs_minus_sat_with(phi: &Formula, exec: Exec) -> Result<LhsVerdict, DecideError> {
    let v = lhs_minus_valid_with(&Formula::not(phi.clone()), exec)?;
    Ok(match v.status {
        Status::Valid => LhsVerdict {
            status: Status::Unsat,
            witness: None,
            certificate: v.certificate,
            conjuncts: v.conjuncts,
        },
        _ => {
            let w = v.witness.expect("INVALID verdicts carry a witness");
            if !check(&w.model, w.at, phi).map_err(DecideError::internal)? {
                return Err(DecideError::Internal(format!("model does not satisfy {phi}")));
            }
            LhsVerdict {
                status: Status::Sat,
                witness: Some(w),
                certificate: None,
                conjuncts: v.conjuncts,
            }
        }
    })
}

/// Re-checks a certificate: conjunct `i` must have a K-valid side as
/// recorded.
pub fn verify_certificate(phi: &Formula, certificate: &[Certificate]) -> Result<bool, DecideError> {
    let comp = companion(phi)?;
    if comp.len() != certificate.len() {
        return Ok(false);
    }
    for ((psi, gamma), c) in comp.conjuncts.iter().zip(certificate) {
        let side = match c {
            Certificate::Psi => psi,
            Certificate::Gamma => gamma,
        };
        if !k_valid(side)?.is_valid() {
            return Ok(false);
        }
    }
    Ok(true)
}
