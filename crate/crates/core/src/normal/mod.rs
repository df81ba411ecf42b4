//! Propositional CNF, clean decompositions, the clean-to-clean-CNF function
//! and clean CNF companions of I-free formulas.

mod clean;
mod cnf;
mod companion;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{fresh_var, is_black_only, is_white_only, Formula, PropName, Side};

pub use clean::{clean_decompose, clean_to_cnf, clean_to_cnf_with, CleanDecomposition};
pub use cnf::{
    clauses_formula, is_cnf, prop_clauses, prop_cnf, Clause, Literal, DEFAULT_CLAUSE_CEILING,
};
pub use companion::{companion, companion_bounded, companion_with, CompanionStyle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error("input must be propositional (no modalities, no I)")]
    ModalInput,
    #[error("input is not a clean formula")]
    NotClean,
    #[error("input contains I")]
    ContainsI,
    #[error("normal form needs {clauses} clauses, ceiling is {ceiling}")]
    TooLarge { clauses: usize, ceiling: usize },
}

/// A conjunction of `ψᵢ ∨ γᵢ` with every `ψᵢ` white-only and every `γᵢ`
/// black-only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CleanCnf {
    pub conjuncts: Vec<(Formula, Formula)>,
}

impl CleanCnf {
    pub fn len(&self) -> usize {
        self.conjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjuncts.is_empty()
    }

    /// `(ψ₁ | γ₁) & (ψ₂ | γ₂) & ...`, left-nested.
    pub fn to_formula(&self) -> Formula {
        Formula::conj(
            self.conjuncts
                .iter()
                .map(|(psi, gamma)| Formula::or(psi.clone(), gamma.clone())),
        )
    }

    /// Nonempty, every `ψᵢ` white-only and every `γᵢ` black-only.
    pub fn is_well_formed(&self) -> bool {
        !self.conjuncts.is_empty()
            && self
                .conjuncts
                .iter()
                .all(|(psi, gamma)| is_white_only(psi) && is_black_only(gamma))
    }

    pub fn vars(&self) -> BTreeSet<PropName> {
        self.to_formula().vars()
    }
}

/// Shape check for rendered clean CNF formulas: a left-nested conjunction
/// of `ψ | γ` with a white-only left and black-only right disjunct.
pub fn is_clean_cnf_shape(phi: &Formula) -> bool {
    match phi {
        Formula::And(a, b) => is_clean_cnf_shape(a) && is_clean_cnf_shape(b),
        Formula::Or(psi, gamma) => is_white_only(psi) && is_black_only(gamma),
        _ => false,
    }
}

/// Per-call supply of variables `_fresh<k>` avoiding the input's variables
/// and everything handed out so far.
#[derive(Clone, Debug)]
pub struct FreshSupply {
    used: BTreeSet<PropName>,
}

impl FreshSupply {
    pub fn new(avoid: BTreeSet<PropName>) -> Self {
        FreshSupply { used: avoid }
    }

    pub fn draw(&mut self, side: Side) -> PropName {
        let p = fresh_var(side, &self.used);
        self.used.insert(p.clone());
        p
    }
}
