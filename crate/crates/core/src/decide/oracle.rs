//! A deliberately plain satisfiability oracle for cross-checking. It walks
//! the joint space of edge bits and valuation bits with its own recursive
//! three-valued evaluator and has nothing in common with the tableau or the
//! normal forms; only the final model is re-checked with the main
//! evaluator.

use std::collections::BTreeMap;

use crate::model::{Model, PointedPair};
use crate::semantics::check;
use crate::syntax::{Formula, PropName, Side};

use super::{BoundedResult, DecideError, Witness};

/// Upper limit on the number of unknown bits per model size.
const MAX_BITS: usize = 96;

struct Space {
    n: usize,
    props: Vec<PropName>,
    /// `n*n` edge bits followed by `props.len()*n` valuation bits.
    bits: Vec<Option<bool>>,
}

impl Space {
    fn edge_bit(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    fn val_bit(&self, p: &PropName, w: usize) -> usize {
        let i = self.props.iter().position(|q| q == p).expect("known variable");
        self.n * self.n + i * self.n + w
    }

    fn get(&self, bit: usize) -> Option<bool> {
        self.bits[bit]
    }

    /// Three-valued value: `Some(b)` when determined, `None` when unknown.
    fn eval(&self, phi: &Formula, s: usize, t: usize) -> Option<bool> {
        match phi {
            Formula::Atom(p) => self.get(self.val_bit(p, if p.side() == Side::Left { s } else { t })),
            Formula::EqConst => Some(s == t),
            Formula::Top => Some(true),
            Formula::Bot => Some(false),
            Formula::Not(a) => self.eval(a, s, t).map(|v| !v),
            Formula::And(a, b) => and3(self.eval(a, s, t), self.eval(b, s, t)),
            Formula::Or(a, b) => or3(self.eval(a, s, t), self.eval(b, s, t)),
            Formula::Implies(a, b) => or3(self.eval(a, s, t).map(|v| !v), self.eval(b, s, t)),
            Formula::Iff(a, b) => match (self.eval(a, s, t), self.eval(b, s, t)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
            Formula::WBox(a) => self.boxed(a, s, t, true, true),
            Formula::WDia(a) => self.boxed(a, s, t, true, false),
            Formula::BBox(a) => self.boxed(a, s, t, false, true),
            Formula::BDia(a) => self.boxed(a, s, t, false, false),
        }
    }

    /// Box (`universal`) or diamond over successors of the first (`white`)
    /// or second coordinate, as a fold over all potential successors.
    fn boxed(&self, a: &Formula, s: usize, t: usize, white: bool, universal: bool) -> Option<bool> {
        let mut acc = Some(universal);
        for v in 0..self.n {
            let (from, ns, nt) = if white { (s, v, t) } else { (t, s, v) };
            let edge = self.get(self.edge_bit(from, v));
            let body = self.eval(a, ns, nt);
            // Contribution of v: for a box, "edge -> body"; for a diamond,
            // "edge & body".
            let term = if universal {
                or3(edge.map(|e| !e), body)
            } else {
                and3(edge, body)
            };
            acc = if universal { and3(acc, term) } else { or3(acc, term) };
        }
        acc
    }

    /// Some unassigned bit the unknown value of `phi` at `(s,t)` hinges on.
    fn culprit(&self, phi: &Formula, s: usize, t: usize) -> usize {
        match phi {
            Formula::Atom(p) => self.val_bit(p, if p.side() == Side::Left { s } else { t }),
            Formula::Not(a) => self.culprit(a, s, t),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                if self.eval(a, s, t).is_none() {
                    self.culprit(a, s, t)
                } else {
                    self.culprit(b, s, t)
                }
            }
            Formula::WBox(a) | Formula::WDia(a) | Formula::BBox(a) | Formula::BDia(a) => {
                let white = matches!(phi, Formula::WBox(_) | Formula::WDia(_));
                let universal = matches!(phi, Formula::WBox(_) | Formula::BBox(_));
                for v in 0..self.n {
                    let (from, ns, nt) = if white { (s, v, t) } else { (t, s, v) };
                    let edge_bit = self.edge_bit(from, v);
                    let body = self.eval(a, ns, nt);
                    // A successor matters unless its edge is absent or its
                    // body already has the value the quantifier wants.
                    if self.get(edge_bit) == Some(false) || body == Some(universal) {
                        continue;
                    }
                    if self.get(edge_bit).is_none() {
                        return edge_bit;
                    }
                    return self.culprit(a, ns, nt);
                }
                unreachable!("an unknown quantifier has an undecided successor")
            }
            Formula::EqConst | Formula::Top | Formula::Bot => unreachable!("never unknown"),
        }
    }

    fn search(&mut self, phi: &Formula, s: usize, t: usize) -> bool {
        match self.eval(phi, s, t) {
            Some(v) => v,
            None => {
                let bit = self.culprit(phi, s, t);
                for choice in [false, true] {
                    self.bits[bit] = Some(choice);
                    if self.search(phi, s, t) {
                        return true;
                    }
                }
                self.bits[bit] = None;
                false
            }
        }
    }

    fn to_model(&self) -> Model {
        let n = self.n;
        let states = (0..n).map(|i| format!("w{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.get(self.edge_bit(a, b)) == Some(true) {
                    edges.push((a, b));
                }
            }
        }
        let mut valuation = BTreeMap::new();
        for p in &self.props {
            let set = (0..n).filter(|&w| self.get(self.val_bit(p, w)) == Some(true)).collect();
            valuation.insert(p.clone(), set);
        }
        Model::new(states, edges, valuation).expect("oracle models are well-formed")
    }
}

fn and3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn or3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

/// Exhaustive search over all models with `1..=max_states` states. States
/// are interchangeable, so the evaluation pair is fixed to `(w0, w0)` or
/// `(w0, w1)` without losing any model up to isomorphism.
pub fn brute_force_sat_oracle(phi: &Formula, max_states: usize) -> Result<BoundedResult, DecideError> {
    let props: Vec<PropName> = phi.vars().into_iter().collect();
    for n in 1..=max_states {
        let total = n * n + props.len() * n;
        if total > MAX_BITS {
            return Err(DecideError::ResourceGuard {
                count: total as u128,
                ceiling: MAX_BITS as u128,
            });
        }
        let pairs: &[(usize, usize)] = if n == 1 { &[(0, 0)] } else { &[(0, 0), (0, 1)] };
        for &(s, t) in pairs {
            let mut space = Space {
                n,
                props: props.clone(),
                bits: vec![None; total],
            };
            if space.search(phi, s, t) {
                let model = space.to_model();
                let at = PointedPair::new(s, t);
                if !check(&model, at, phi).map_err(DecideError::internal)? {
                    return Err(DecideError::Internal(format!("oracle model fails {phi}")));
                }
                return Ok(BoundedResult::Sat(Witness { model, at }));
            }
        }
    }
    Ok(BoundedResult::NoModelUpToBound(max_states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn basics() {
        assert!(brute_force_sat_oracle(&f("I"), 1).unwrap().is_sat());
        assert_eq!(
            brute_force_sat_oracle(&f("I & ~I"), 3).unwrap(),
            BoundedResult::NoModelUpToBound(3)
        );
        assert!(brute_force_sat_oracle(&f("~I"), 1).unwrap() == BoundedResult::NoModelUpToBound(1));
        assert!(brute_force_sat_oracle(&f("~I"), 2).unwrap().is_sat());
    }

    #[test]
    fn k_non_theorem_needs_two_successors() {
        let phi = f("[W](l:p | l:q) & ~([W]l:p | [W]l:q)");
        let BoundedResult::Sat(w) = brute_force_sat_oracle(&phi, 3).unwrap() else {
            panic!("expected a model")
        };
        assert!(w.model.successors(w.at.s).len() >= 2);
    }

    #[test]
    fn agrees_with_bounded_search() {
        for s in ["<W><B>I & ~I", "[W]false & <B>true", "l:p & [B]~l:p & <B>I", "I & <W>~I & [W]I"] {
            let a = brute_force_sat_oracle(&f(s), 3).unwrap().is_sat();
            let b = super::super::lhs_bounded_sat(&f(s), 3).unwrap().is_sat();
            assert_eq!(a, b, "{s}");
        }
    }
}
