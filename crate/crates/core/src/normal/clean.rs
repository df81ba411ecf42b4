use std::collections::{BTreeMap, HashMap};

use crate::syntax::{classify, replace_atoms, Formula, PropName, Side};

use super::cnf::{clauses_with, literal_formula, DEFAULT_CLAUSE_CEILING};
use super::{CleanCnf, FreshSupply, NormalError};

const PLACEHOLDER_PREFIX: &str = "_block";

/// A propositional skeleton over placeholder atoms plus the one-sided
/// blocks they stand for. Left placeholders stand for white-only blocks,
/// right placeholders for black-only ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub skeleton: Formula,
    pub blocks: Vec<(PropName, Formula)>,
}

impl CleanDecomposition {
    /// Substitutes the blocks back into the skeleton.
    pub fn reassemble(&self) -> Formula {
        let map: BTreeMap<&PropName, &Formula> = self.blocks.iter().map(|(p, b)| (p, b)).collect();
        replace_atoms(&self.skeleton, &|p| map.get(p).map(|b| (*b).clone()))
    }
}

/// Splits a clean formula into maximal one-sided blocks. A block that is
/// both white-only and black-only (a formula without atoms or modalities)
/// is treated as white. Identical blocks share a placeholder.
pub fn clean_decompose(phi: &Formula) -> Result<CleanDecomposition, NormalError> {
    if !classify(phi).clean {
        return Err(NormalError::NotClean);
    }
    let mut reg = Registry::default();
    let skeleton = match decompose(phi, &mut reg) {
        Part::Whole { white, .. } => reg.block(phi, white),
        Part::Mixed(s) => s,
    };
    Ok(CleanDecomposition {
        skeleton,
        blocks: reg.blocks,
    })
}

#[derive(Default)]
struct Registry {
    blocks: Vec<(PropName, Formula)>,
    index: HashMap<(Side, Formula), PropName>,
}

impl Registry {
    fn block(&mut self, phi: &Formula, white: bool) -> Formula {
        let side = if white { Side::Left } else { Side::Right };
        if let Some(p) = self.index.get(&(side, phi.clone())) {
            return Formula::Atom(p.clone());
        }
        let p = PropName::internal(side, format!("{PLACEHOLDER_PREFIX}{}", self.blocks.len()));
        self.blocks.push((p.clone(), phi.clone()));
        self.index.insert((side, phi.clone()), p.clone());
        Formula::Atom(p)
    }
}

/// Placeholders for modal subformulas only; atoms, constants and all
/// Boolean structure stay in the skeleton, where the propositional
/// conversion can see through them.
fn fine_decompose(phi: &Formula) -> Result<CleanDecomposition, NormalError> {
    fn go(phi: &Formula, reg: &mut Registry) -> Result<Formula, NormalError> {
        match phi {
            Formula::EqConst => Err(NormalError::NotClean),
            Formula::WBox(_) | Formula::WDia(_) => Ok(reg.block(phi, true)),
            Formula::BBox(_) | Formula::BDia(_) => Ok(reg.block(phi, false)),
            _ => {
                let kids = phi.children().into_iter().map(|c| go(c, reg)).collect::<Result<_, _>>()?;
                Ok(phi.with_children(kids))
            }
        }
    }
    if !classify(phi).clean {
        return Err(NormalError::NotClean);
    }
    let mut reg = Registry::default();
    let skeleton = go(phi, &mut reg)?;
    Ok(CleanDecomposition {
        skeleton,
        blocks: reg.blocks,
    })
}

/// A subformula is either one-sided as a whole, with its white-only and
/// black-only flags, or already split into a skeleton.
enum Part {
    Whole { white: bool, black: bool },
    Mixed(Formula),
}

/// Bottom-up, so each node is classified once.
fn decompose(phi: &Formula, reg: &mut Registry) -> Part {
    let kids = phi.children();
    let parts: Vec<Part> = kids.iter().map(|c| decompose(c, reg)).collect();
    let (node_white, node_black) = match phi {
        Formula::Atom(p) => (p.side() == Side::Left, p.side() == Side::Right),
        Formula::EqConst => (false, false),
        Formula::WBox(_) | Formula::WDia(_) => (true, false),
        Formula::BBox(_) | Formula::BDia(_) => (false, true),
        _ => (true, true),
    };
    let white = node_white && parts.iter().all(|p| matches!(p, Part::Whole { white: true, .. }));
    let black = node_black && parts.iter().all(|p| matches!(p, Part::Whole { black: true, .. }));
    if white || black {
        return Part::Whole { white, black };
    }
    let skel = kids
        .iter()
        .zip(parts)
        .map(|(c, p)| match p {
            Part::Whole { white, .. } => reg.block(c, white),
            Part::Mixed(s) => s,
        })
        .collect();
    Part::Mixed(phi.with_children(skel))
}

/// The function f: a clean CNF formula equivalent to the clean input, with
/// each side of every conjunct padded by a contradiction over a new
/// variable.
pub fn clean_to_cnf(phi: &Formula) -> Result<CleanCnf, NormalError> {
    let mut supply = FreshSupply::new(phi.vars());
    clean_to_cnf_with(phi, &mut supply, DEFAULT_CLAUSE_CEILING)
}

pub fn clean_to_cnf_with(
    phi: &Formula,
    supply: &mut FreshSupply,
    ceiling: usize,
) -> Result<CleanCnf, NormalError> {
    convert(phi, supply, ceiling, false)
}

/// `reduce` additionally drops tautological, repeated and subsumed clauses
/// of the skeleton.
pub(crate) fn convert(
    phi: &Formula,
    supply: &mut FreshSupply,
    ceiling: usize,
    reduce: bool,
) -> Result<CleanCnf, NormalError> {
    let dec = if reduce { fine_decompose(phi)? } else { clean_decompose(phi)? };
    let clauses = clauses_with(&dec.skeleton, ceiling, reduce)?;
    let blocks: BTreeMap<&PropName, &Formula> = dec.blocks.iter().map(|(p, b)| (p, b)).collect();
    let pad_l = Formula::contradiction(supply.draw(Side::Left));
    let pad_r = Formula::contradiction(supply.draw(Side::Right));

    let side_of = |clause: &[(PropName, bool)], side: Side, pad: &Formula| {
        clause
            .iter()
            .filter(|(p, _)| p.side() == side)
            .map(|(p, pos)| {
                let lit = literal_formula(&(p.clone(), *pos));
                replace_atoms(&lit, &|q| blocks.get(q).map(|b| (*b).clone()))
            })
            .fold(pad.clone(), Formula::or)
    };

    let conjuncts = if clauses.is_empty() {
        // The skeleton is a tautology: one conjunct that is trivially true.
        vec![(Formula::or(pad_l, Formula::Top), pad_r)]
    } else {
        clauses
            .iter()
            .map(|c| (side_of(c, Side::Left, &pad_l), side_of(c, Side::Right, &pad_r)))
            .collect()
    };
    Ok(CleanCnf { conjuncts })
}
