use std::collections::BTreeMap;

use crate::exec::Exec;
use crate::model::{Model, PointedPair, StateId};
use crate::semantics::check;
use crate::syntax::{Dag, Formula, Node, PropName, Side};

use super::{DecideError, Witness};

/// Frame-and-pair count above which bounded search refuses unless forced.
/// Bound 4 (65536 frames × 16 pairs) is just under it.
pub const DEFAULT_SEARCH_CEILING: u128 = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedResult {
    Sat(Witness),
    /// Nothing up to the bound. This is not a proof of unsatisfiability.
    NoModelUpToBound(usize),
}

impl BoundedResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, BoundedResult::Sat(_))
    }
}

/// Searches every frame with `1..=max_states` states and every pair of
/// states for a valuation making `phi` true, trying sizes in increasing
/// order. Works for the full language, including I.
pub fn lhs_bounded_sat(phi: &Formula, max_states: usize) -> Result<BoundedResult, DecideError> {
    lhs_bounded_sat_with(phi, max_states, false, Exec::default())
}

pub fn lhs_bounded_sat_with(
    phi: &Formula,
    max_states: usize,
    force: bool,
    exec: Exec,
) -> Result<BoundedResult, DecideError> {
    let count = search_count(max_states);
    let ceiling = DEFAULT_SEARCH_CEILING;
    match count {
        Some(c) if force || c <= ceiling => {}
        _ => {
            return Err(DecideError::ResourceGuard {
                count: count.unwrap_or(u128::MAX),
                ceiling,
            })
        }
    }
    let dag = Dag::new(phi);
    let props: Vec<PropName> = phi.vars().into_iter().collect();
    for n in 1..=max_states {
        let frames = 1usize << (n * n);
        let found = exec.find_map_first_range(0..frames, |mask| {
            let succ = frame_successors(n, mask as u128);
            (0..n * n).find_map(|pair| {
                let (s, t) = (pair / n, pair % n);
                let search = ValuationSearch {
                    dag: &dag,
                    props: &props,
                    n,
                    succ: &succ,
                };
                search.run(s, t).map(|val| (mask, s, t, val))
            })
        });
        if let Some((mask, s, t, val)) = found {
            let model = decode(n, mask as u128, &props, &val);
            let at = PointedPair::new(s, t);
            if !check(&model, at, phi).map_err(DecideError::internal)? {
                return Err(DecideError::Internal(format!(
                    "bounded search produced a non-model of {phi}"
                )));
            }
            return Ok(BoundedResult::Sat(Witness { model, at }));
        }
    }
    Ok(BoundedResult::NoModelUpToBound(max_states))
}

fn search_count(max_states: usize) -> Option<u128> {
    (1..=max_states).try_fold(0u128, |acc, n| {
        let bits = n.checked_mul(n)?;
        if bits >= 100 {
            return None;
        }
        acc.checked_add((1u128 << bits) * (n * n) as u128)
    })
}

fn frame_successors(n: usize, mask: u128) -> Vec<Vec<StateId>> {
    (0..n)
        .map(|a| (0..n).filter(|b| mask >> (a * n + b) & 1 == 1).collect())
        .collect()
}

fn decode(n: usize, mask: u128, props: &[PropName], val: &[Option<bool>]) -> Model {
    let states = (0..n).map(|i| format!("w{i}")).collect();
    let edges: Vec<_> = (0..n * n)
        .filter(|bit| mask >> bit & 1 == 1)
        .map(|bit| (bit / n, bit % n))
        .collect();
    let valuation: BTreeMap<_, _> = props
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let set = (0..n).filter(|w| val[i * n + w] == Some(true)).collect();
            (p.clone(), set)
        })
        .collect();
    Model::new(states, edges, valuation).expect("decoded frames are valid")
}

/// Kleene truth values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum V3 {
    F,
    T,
    U,
}

impl V3 {
    fn not(self) -> V3 {
        match self {
            V3::F => V3::T,
            V3::T => V3::F,
            V3::U => V3::U,
        }
    }
    fn and(self, o: V3) -> V3 {
        match (self, o) {
            (V3::F, _) | (_, V3::F) => V3::F,
            (V3::T, V3::T) => V3::T,
            _ => V3::U,
        }
    }
    fn or(self, o: V3) -> V3 {
        self.not().and(o.not()).not()
    }
    fn iff(self, o: V3) -> V3 {
        match (self, o) {
            (V3::U, _) | (_, V3::U) => V3::U,
            (a, b) => if a == b { V3::T } else { V3::F },
        }
    }
}

/// Valuation search on a fixed frame: partial valuations are evaluated in
/// three-valued logic, and the search branches on an unknown atom that the
/// root's value depends on.
struct ValuationSearch<'a> {
    dag: &'a Dag,
    props: &'a [PropName],
    n: usize,
    succ: &'a [Vec<StateId>],
}

impl ValuationSearch<'_> {
    fn run(&self, s: StateId, t: StateId) -> Option<Vec<Option<bool>>> {
        let mut val = vec![None; self.props.len() * self.n];
        self.dfs(s, t, &mut val).then_some(val)
    }

    fn prop_index(&self, p: &PropName) -> usize {
        self.props.iter().position(|q| q == p).expect("formula variable")
    }

    fn table(&self, val: &[Option<bool>]) -> Vec<Vec<V3>> {
        let n = self.n;
        let mut rows: Vec<Vec<V3>> = Vec::with_capacity(self.dag.len());
        for node in self.dag.nodes() {
            let mut row = vec![V3::U; n * n];
            for s in 0..n {
                for t in 0..n {
                    let at = |id: usize, s: usize, t: usize| rows[id][s * n + t];
                    row[s * n + t] = match node {
                        Node::Atom(p) => {
                            let w = if p.side() == Side::Left { s } else { t };
                            match val[self.prop_index(p) * n + w] {
                                Some(true) => V3::T,
                                Some(false) => V3::F,
                                None => V3::U,
                            }
                        }
                        Node::Eq => if s == t { V3::T } else { V3::F },
                        Node::Top => V3::T,
                        Node::Bot => V3::F,
                        Node::Not(a) => at(*a, s, t).not(),
                        Node::And(a, b) => at(*a, s, t).and(at(*b, s, t)),
                        Node::Or(a, b) => at(*a, s, t).or(at(*b, s, t)),
                        Node::Implies(a, b) => at(*a, s, t).not().or(at(*b, s, t)),
                        Node::Iff(a, b) => at(*a, s, t).iff(at(*b, s, t)),
                        Node::WBox(a) => self.succ[s].iter().fold(V3::T, |acc, &v| acc.and(at(*a, v, t))),
                        Node::WDia(a) => self.succ[s].iter().fold(V3::F, |acc, &v| acc.or(at(*a, v, t))),
                        Node::BBox(a) => self.succ[t].iter().fold(V3::T, |acc, &v| acc.and(at(*a, s, v))),
                        Node::BDia(a) => self.succ[t].iter().fold(V3::F, |acc, &v| acc.or(at(*a, s, v))),
                    };
                }
            }
            rows.push(row);
        }
        rows
    }

    /// An unassigned valuation bit on which the unknown value of `id` at
    /// `(s, t)` depends.
    fn culprit(&self, rows: &[Vec<V3>], id: usize, s: usize, t: usize) -> usize {
        let n = self.n;
        let unknown = |id: usize, s: usize, t: usize| rows[id][s * n + t] == V3::U;
        match &self.dag.nodes()[id] {
            Node::Atom(p) => {
                let w = if p.side() == Side::Left { s } else { t };
                self.prop_index(p) * n + w
            }
            Node::Not(a) => self.culprit(rows, *a, s, t),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
                let c = if unknown(*a, s, t) { *a } else { *b };
                self.culprit(rows, c, s, t)
            }
            Node::WBox(a) | Node::WDia(a) => {
                let v = *self.succ[s].iter().find(|&&v| unknown(*a, v, t)).expect("unknown successor");
                self.culprit(rows, *a, v, t)
            }
            Node::BBox(a) | Node::BDia(a) => {
                let v = *self.succ[t].iter().find(|&&v| unknown(*a, s, v)).expect("unknown successor");
                self.culprit(rows, *a, s, v)
            }
            Node::Eq | Node::Top | Node::Bot => unreachable!("constants are never unknown"),
        }
    }

    fn dfs(&self, s: StateId, t: StateId, val: &mut Vec<Option<bool>>) -> bool {
        let rows = self.table(val);
        let root = self.dag.root();
        match rows[root][s * self.n + t] {
            V3::T => true,
            V3::F => false,
            V3::U => {
                let bit = self.culprit(&rows, root, s, t);
                for choice in [false, true] {
                    val[bit] = Some(choice);
                    if self.dfs(s, t, val) {
                        return true;
                    }
                }
                val[bit] = None;
                false
            }
        }
    }
}
