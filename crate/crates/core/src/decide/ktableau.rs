use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::model::{Model, StateId};
use crate::semantics::one_sided_eval;
use crate::syntax::{classify, Formula, PropName};

use super::DecideError;

/// A pointed model: the state at which a formula is (or is not) satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWitness {
    pub model: Model,
    pub state: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KVerdict {
    Sat(KWitness),
    Unsat,
}

impl KVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, KVerdict::Sat(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KValidity {
    Valid,
    /// A pointed model falsifying the formula.
    Invalid(KWitness),
}

impl KValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, KValidity::Valid)
    }
}

type Id = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum K {
    Lit(PropName, bool),
    Top,
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Box(Id),
    Dia(Id),
}

struct TreeNode {
    true_atoms: BTreeSet<PropName>,
    children: Vec<Rc<TreeNode>>,
}

/// Tableau for the basic modal logic K over a one-sided formula. Boxes and
/// diamonds of either color are read as the single modality of the side.
#[derive(Default)]
struct Tableau {
    nodes: Vec<K>,
    ids: HashMap<K, Id>,
    memo: HashMap<Vec<Id>, Option<Rc<TreeNode>>>,
}

impl Tableau {
    fn intern(&mut self, k: K) -> Id {
        if let Some(&id) = self.ids.get(&k) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(k.clone());
        self.ids.insert(k, id);
        id
    }

    fn nnf(&mut self, phi: &Formula, pos: bool) -> Id {
        use Formula as F;
        let k = match phi {
            F::Atom(p) => K::Lit(p.clone(), pos),
            F::Top => if pos { K::Top } else { K::Bot },
            F::Bot => if pos { K::Bot } else { K::Top },
            F::Not(a) => return self.nnf(a, !pos),
            F::And(a, b) | F::Or(a, b) => {
                let x = self.nnf(a, pos);
                let y = self.nnf(b, pos);
                if matches!(phi, F::And(..)) == pos {
                    K::And(x, y)
                } else {
                    K::Or(x, y)
                }
            }
            F::Implies(a, b) => {
                let x = self.nnf(a, !pos);
                let y = self.nnf(b, pos);
                if pos { K::Or(x, y) } else { K::And(x, y) }
            }
            F::Iff(a, b) => {
                // (a & b) | (~a & ~b)  ;  negated: (a & ~b) | (~a & b)
                let a1 = self.nnf(a, true);
                let a0 = self.nnf(a, false);
                let b1 = self.nnf(b, true);
                let b0 = self.nnf(b, false);
                let (l, r) = if pos {
                    (K::And(a1, b1), K::And(a0, b0))
                } else {
                    (K::And(a1, b0), K::And(a0, b1))
                };
                let l = self.intern(l);
                let r = self.intern(r);
                K::Or(l, r)
            }
            F::WBox(a) | F::BBox(a) => {
                let x = self.nnf(a, pos);
                if pos { K::Box(x) } else { K::Dia(x) }
            }
            F::WDia(a) | F::BDia(a) => {
                let x = self.nnf(a, pos);
                if pos { K::Dia(x) } else { K::Box(x) }
            }
            F::EqConst => unreachable!("one-sided formulas are I-free"),
        };
        self.intern(k)
    }

    fn solve(&mut self, mut set: Vec<Id>) -> Option<Rc<TreeNode>> {
        set.sort_unstable();
        set.dedup();
        if let Some(hit) = self.memo.get(&set) {
            return hit.clone();
        }
        let result = self.expand(set.clone(), BTreeMap::new(), Vec::new(), Vec::new());
        self.memo.insert(set, result.clone());
        result
    }

    fn expand(
        &mut self,
        mut pending: Vec<Id>,
        mut lits: BTreeMap<PropName, bool>,
        mut boxes: Vec<Id>,
        mut dias: Vec<Id>,
    ) -> Option<Rc<TreeNode>> {
        while let Some(id) = pending.pop() {
            match self.nodes[id as usize].clone() {
                K::Top => {}
                K::Bot => return None,
                K::Lit(p, pos) => match lits.get(&p) {
                    Some(&v) if v != pos => return None,
                    _ => {
                        lits.insert(p, pos);
                    }
                },
                K::And(a, b) => {
                    pending.push(b);
                    pending.push(a);
                }
                K::Or(a, b) => {
                    let mut left = pending.clone();
                    left.push(a);
                    if let Some(t) = self.expand(left, lits.clone(), boxes.clone(), dias.clone()) {
                        return Some(t);
                    }
                    pending.push(b);
                }
                K::Box(a) => boxes.push(a),
                K::Dia(a) => dias.push(a),
            }
        }
        dias.sort_unstable();
        dias.dedup();
        let mut children = Vec::with_capacity(dias.len());
        for d in dias {
            let mut set = boxes.clone();
            set.push(d);
            children.push(self.solve(set)?);
        }
        Some(Rc::new(TreeNode {
            true_atoms: lits.into_iter().filter(|(_, v)| *v).map(|(p, _)| p).collect(),
            children,
        }))
    }
}

fn tree_model(root: &TreeNode) -> Model {
    let mut states = Vec::new();
    let mut edges = Vec::new();
    let mut valuation: BTreeMap<PropName, BTreeSet<StateId>> = BTreeMap::new();
    let mut stack: Vec<(&TreeNode, Option<StateId>)> = vec![(root, None)];
    while let Some((node, parent)) = stack.pop() {
        let id = states.len();
        states.push(format!("k{id}"));
        if let Some(p) = parent {
            edges.push((p, id));
        }
        for p in &node.true_atoms {
            // Companion padding variables stay false in every witness.
            if !p.is_fresh() {
                valuation.entry(p.clone()).or_default().insert(id);
            }
        }
        for c in node.children.iter().rev() {
            stack.push((c, Some(id)));
        }
    }
    Model::new(states, edges, valuation).expect("tableau trees are well-formed models")
}

fn require_one_sided(phi: &Formula) -> Result<(), DecideError> {
    let c = classify(phi);
    if c.white_only || c.black_only {
        Ok(())
    } else {
        Err(DecideError::MixedFormula)
    }
}

/// Satisfiability in K. A model, when found, is a finite tree whose root
/// satisfies the formula; its depth never exceeds the modal depth.
pub fn k_sat(phi: &Formula) -> Result<KVerdict, DecideError> {
    require_one_sided(phi)?;
    let mut tab = Tableau::default();
    let root = tab.nnf(phi, true);
    match tab.solve(vec![root]) {
        None => Ok(KVerdict::Unsat),
        Some(tree) => {
            let model = tree_model(&tree);
            let witness = KWitness { model, state: 0 };
            if !one_sided_eval(&witness.model, 0, phi).map_err(DecideError::internal)? {
                return Err(DecideError::Internal(format!(
                    "tableau witness does not satisfy {phi}"
                )));
            }
            Ok(KVerdict::Sat(witness))
        }
    }
}

/// Validity in K, with a countermodel when invalid.
pub fn k_valid(phi: &Formula) -> Result<KValidity, DecideError> {
    require_one_sided(phi)?;
    Ok(match k_sat(&Formula::not(phi.clone()))? {
        KVerdict::Unsat => KValidity::Valid,
        KVerdict::Sat(w) => KValidity::Invalid(w),
    })
}
