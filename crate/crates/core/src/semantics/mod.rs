//! Truth of formulas at pointed pairs, one-dimensional evaluation of
//! one-sided formulas, and the first-order translation.

mod fo;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exec::Exec;
use crate::model::{Model, PointedPair, StateId};
use crate::syntax::{classify, Dag, Formula, Node, Side};

pub use fo::{fo_eval, fo_translate, FoError, FoFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("unknown state index {0}")]
    UnknownState(StateId),
    #[error("formula is neither white-only nor black-only")]
    MixedFormula,
}

/// Truth values of every node of a formula at every pair of states.
/// Entry `s * n + t` of a node's row is the value at `(s, t)`.
pub struct PairTable {
    n: usize,
    rows: Vec<Vec<bool>>,
    root: usize,
}

impl PairTable {
    pub fn build(m: &Model, phi: &Formula) -> Self {
        Self::build_with(m, phi, Exec::Sequential)
    }

    pub fn build_with(m: &Model, phi: &Formula, exec: Exec) -> Self {
        let dag = Dag::new(phi);
        let n = m.len();
        let mut rows: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
        for node in dag.nodes() {
            let row_of = |s: StateId| -> Vec<bool> {
                (0..n).map(|t| node_value(m, node, &rows, n, s, t)).collect()
            };
            let row: Vec<bool> = exec.map_range(0..n, row_of).concat();
            rows.push(row);
        }
        PairTable {
            n,
            rows,
            root: dag.root(),
        }
    }

    pub fn get(&self, s: StateId, t: StateId) -> bool {
        self.rows[self.root][s * self.n + t]
    }

    pub fn satisfying_pairs(&self) -> BTreeSet<PointedPair> {
        (0..self.n)
            .flat_map(|s| (0..self.n).map(move |t| PointedPair::new(s, t)))
            .filter(|p| self.get(p.s, p.t))
            .collect()
    }
}

fn node_value(m: &Model, node: &Node, rows: &[Vec<bool>], n: usize, s: StateId, t: StateId) -> bool {
    let at = |id: usize, s: StateId, t: StateId| rows[id][s * n + t];
    match node {
        Node::Atom(p) => match p.side() {
            Side::Left => m.holds(p, s),
            Side::Right => m.holds(p, t),
        },
        Node::Eq => s == t,
        Node::Top => true,
        Node::Bot => false,
        Node::Not(a) => !at(*a, s, t),
        Node::And(a, b) => at(*a, s, t) && at(*b, s, t),
        Node::Or(a, b) => at(*a, s, t) || at(*b, s, t),
        Node::Implies(a, b) => !at(*a, s, t) || at(*b, s, t),
        Node::Iff(a, b) => at(*a, s, t) == at(*b, s, t),
        Node::WBox(a) => m.successors(s).iter().all(|&v| at(*a, v, t)),
        Node::WDia(a) => m.successors(s).iter().any(|&v| at(*a, v, t)),
        Node::BBox(a) => m.successors(t).iter().all(|&v| at(*a, s, v)),
        Node::BDia(a) => m.successors(t).iter().any(|&v| at(*a, s, v)),
    }
}

/// `M, s, t ⊨ φ`.
pub fn check(m: &Model, at: PointedPair, phi: &Formula) -> Result<bool, SemanticsError> {
    m.check_state(at.s).map_err(|_| SemanticsError::UnknownState(at.s))?;
    m.check_state(at.t).map_err(|_| SemanticsError::UnknownState(at.t))?;
    Ok(PairTable::build(m, phi).get(at.s, at.t))
}

/// All pairs at which `φ` holds.
pub fn check_all(m: &Model, phi: &Formula) -> BTreeSet<PointedPair> {
    check_all_with(m, phi, Exec::Sequential)
}

pub fn check_all_with(m: &Model, phi: &Formula, exec: Exec) -> BTreeSet<PointedPair> {
    PairTable::build_with(m, phi, exec).satisfying_pairs()
}

/// True at every pair of the model.
pub fn holds_everywhere(m: &Model, phi: &Formula) -> bool {
    let table = PairTable::build(m, phi);
    (0..m.len()).all(|s| (0..m.len()).all(|t| table.get(s, t)))
}

/// Ordinary single-agent Kripke truth of a one-sided formula. Atoms are read
/// from the valuation whatever their side, and both colors of modality move
/// the single point of evaluation.
pub fn one_sided_eval(m: &Model, w: StateId, phi: &Formula) -> Result<bool, SemanticsError> {
    let class = classify(phi);
    if !class.white_only && !class.black_only {
        return Err(SemanticsError::MixedFormula);
    }
    m.check_state(w).map_err(|_| SemanticsError::UnknownState(w))?;
    let dag = Dag::new(phi);
    let n = m.len();
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
    for node in dag.nodes() {
        let row = (0..n)
            .map(|v| {
                let at = |id: usize, v: StateId| rows[id][v];
                match node {
                    Node::Atom(p) => m.holds(p, v),
                    Node::Eq => unreachable!("one-sided formulas are I-free"),
                    Node::Top => true,
                    Node::Bot => false,
                    Node::Not(a) => !at(*a, v),
                    Node::And(a, b) => at(*a, v) && at(*b, v),
                    Node::Or(a, b) => at(*a, v) || at(*b, v),
                    Node::Implies(a, b) => !at(*a, v) || at(*b, v),
                    Node::Iff(a, b) => at(*a, v) == at(*b, v),
                    Node::WBox(a) | Node::BBox(a) => m.successors(v).iter().all(|&u| at(*a, u)),
                    Node::WDia(a) | Node::BDia(a) => m.successors(v).iter().any(|&u| at(*a, u)),
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(rows[dag.root()][w])
}
