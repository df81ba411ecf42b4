//! Bisimulations between pointed pairs of two models: the largest one as a
//! greatest fixpoint over quadruples, and a clause-by-clause witness check.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::model::{Model, PointedPair, StateId};
use crate::syntax::{PropName, Side};

/// Quadruple-count ceiling for [`largest_bisimulation`].
pub const DEFAULT_QUADRUPLE_CEILING: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("{count} quadruples exceed the ceiling {ceiling}")]
    ResourceGuard { count: u128, ceiling: u128 },
}

/// A relation between pairs of `M` and pairs of `M'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRelation<'a> {
    pub left: &'a Model,
    pub right: &'a Model,
    pub pairs: BTreeSet<(PointedPair, PointedPair)>,
}

impl PairRelation<'_> {
    pub fn contains(&self, a: PointedPair, b: PointedPair) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Quadruples as state names, `[[s, t], [s', t']]`.
    pub fn named(&self) -> Vec<[[String; 2]; 2]> {
        self.pairs
            .iter()
            .map(|(a, b)| {
                [
                    [self.left.state_name(a.s).into(), self.left.state_name(a.t).into()],
                    [self.right.state_name(b.s).into(), self.right.state_name(b.t).into()],
                ]
            })
            .collect()
    }
}

/// The six conditions a bisimulation must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    AtomAgreement,
    WhiteForth,
    BlackForth,
    WhiteBack,
    BlackBack,
    Diagonal,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Clause::AtomAgreement => "atom agreement",
            Clause::WhiteForth => "white forth",
            Clause::BlackForth => "black forth",
            Clause::WhiteBack => "white back",
            Clause::BlackBack => "black back",
            Clause::Diagonal => "diagonal (s = t iff s' = t')",
        };
        f.write_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub quadruple: (PointedPair, PointedPair),
}

/// Atom agreement is checked over every variable either model mentions.
fn relevant_props(m: &Model, n: &Model) -> Vec<PropName> {
    m.props().into_iter().chain(n.props()).collect::<BTreeSet<_>>().into_iter().collect()
}

fn atoms_agree(m: &Model, n: &Model, props: &[PropName], a: PointedPair, b: PointedPair) -> bool {
    props.iter().all(|p| match p.side() {
        Side::Left => m.holds(p, a.s) == n.holds(p, b.s),
        Side::Right => m.holds(p, a.t) == n.holds(p, b.t),
    })
}

fn diagonal_ok(a: PointedPair, b: PointedPair) -> bool {
    (a.s == a.t) == (b.s == b.t)
}

/// Which zig-zag clause fails for `(a, b)` under membership test `rel`.
fn zigzag_failure(
    m: &Model,
    n: &Model,
    a: PointedPair,
    b: PointedPair,
    rel: &dyn Fn(PointedPair, PointedPair) -> bool,
) -> Option<Clause> {
    let white_forth = m.successors(a.s).iter().all(|&v| {
        n.successors(b.s)
            .iter()
            .any(|&v2| rel(PointedPair::new(v, a.t), PointedPair::new(v2, b.t)))
    });
    if !white_forth {
        return Some(Clause::WhiteForth);
    }
    let black_forth = m.successors(a.t).iter().all(|&v| {
        n.successors(b.t)
            .iter()
            .any(|&v2| rel(PointedPair::new(a.s, v), PointedPair::new(b.s, v2)))
    });
    if !black_forth {
        return Some(Clause::BlackForth);
    }
    let white_back = n.successors(b.s).iter().all(|&v2| {
        m.successors(a.s)
            .iter()
            .any(|&v| rel(PointedPair::new(v, a.t), PointedPair::new(v2, b.t)))
    });
    if !white_back {
        return Some(Clause::WhiteBack);
    }
    let black_back = n.successors(b.t).iter().all(|&v2| {
        m.successors(a.t)
            .iter()
            .any(|&v| rel(PointedPair::new(a.s, v), PointedPair::new(b.s, v2)))
    });
    if !black_back {
        return Some(Clause::BlackBack);
    }
    None
}

struct Indexer {
    n: usize,
    m: usize,
}

impl Indexer {
    fn index(&self, a: PointedPair, b: PointedPair) -> usize {
        ((a.s * self.n + a.t) * self.m + b.s) * self.m + b.t
    }

    fn decode(&self, i: usize) -> (PointedPair, PointedPair) {
        let bt = i % self.m;
        let bs = i / self.m % self.m;
        let at = i / (self.m * self.m) % self.n;
        let as_ = i / (self.m * self.m * self.n);
        (PointedPair::new(as_, at), PointedPair::new(bs, bt))
    }
}

/// The union of all bisimulations between `m` and `n`.
pub fn largest_bisimulation<'a>(m: &'a Model, n: &'a Model) -> Result<PairRelation<'a>, BisimError> {
    largest_bisimulation_with(m, n, Exec::default())
}

pub fn largest_bisimulation_with<'a>(
    m: &'a Model,
    n: &'a Model,
    exec: Exec,
) -> Result<PairRelation<'a>, BisimError> {
    let count = (m.len() as u128).pow(2) * (n.len() as u128).pow(2);
    if count > DEFAULT_QUADRUPLE_CEILING {
        return Err(BisimError::ResourceGuard {
            count,
            ceiling: DEFAULT_QUADRUPLE_CEILING,
        });
    }
    let ix = Indexer { n: m.len(), m: n.len() };
    let total = count as usize;
    let props = relevant_props(m, n);
    let mut rel: Vec<bool> = exec.map_range(0..total, |i| {
        let (a, b) = ix.decode(i);
        diagonal_ok(a, b) && atoms_agree(m, n, &props, a, b)
    });
    loop {
        let current = &rel;
        let member = |a: PointedPair, b: PointedPair| current[ix.index(a, b)];
        let next: Vec<bool> = exec.map_range(0..total, |i| {
            if !current[i] {
                return false;
            }
            let (a, b) = ix.decode(i);
            zigzag_failure(m, n, a, b, &member).is_none()
        });
        if next == rel {
            break;
        }
        rel = next;
    }
    let pairs = rel
        .iter()
        .enumerate()
        .filter(|(_, keep)| **keep)
        .map(|(i, _)| ix.decode(i))
        .collect();
    Ok(PairRelation {
        left: m,
        right: n,
        pairs,
    })
}

/// Whether `(m, s, t)` and `(n, s', t')` are bisimilar.
pub fn are_bisimilar(
    m: &Model,
    at: PointedPair,
    n: &Model,
    at2: PointedPair,
) -> Result<bool, BisimError> {
    Ok(largest_bisimulation(m, n)?.contains(at, at2))
}

/// Checks all six clauses on every quadruple of `z`; reports the first
/// violation in quadruple order.
pub fn check_bisimulation_witness(z: &PairRelation) -> Result<(), Violation> {
    let props = relevant_props(z.left, z.right);
    let member = |a: PointedPair, b: PointedPair| z.pairs.contains(&(a, b));
    for &(a, b) in &z.pairs {
        let clause = if !atoms_agree(z.left, z.right, &props, a, b) {
            Some(Clause::AtomAgreement)
        } else if !diagonal_ok(a, b) {
            Some(Clause::Diagonal)
        } else {
            zigzag_failure(z.left, z.right, a, b, &member)
        };
        if let Some(clause) = clause {
            return Err(Violation {
                clause,
                quadruple: (a, b),
            });
        }
    }
    Ok(())
}

/// The relation `{((s,t),(f(s),f(t)))}` induced by a map of states.
pub fn relation_from_map<'a>(m: &'a Model, n: &'a Model, f: &[StateId]) -> PairRelation<'a> {
    let pairs = (0..m.len())
        .flat_map(|s| (0..m.len()).map(move |t| (s, t)))
        .map(|(s, t)| (PointedPair::new(s, t), PointedPair::new(f[s], f[t])))
        .collect();
    PairRelation {
        left: m,
        right: n,
        pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{disjoint_union, ModelBuilder};

    fn reflexive_point() -> Model {
        let mut b = ModelBuilder::new();
        b.edge("w", "w");
        b.build().unwrap()
    }

    #[test]
    fn reflexive_point_with_itself() {
        let m = reflexive_point();
        let z = largest_bisimulation(&m, &m).unwrap();
        assert!(z.contains(PointedPair::new(0, 0), PointedPair::new(0, 0)));
        assert!(check_bisimulation_witness(&z).is_ok());
    }

    #[test]
    fn union_copy_contains_identity_tags() {
        let mut b = ModelBuilder::new();
        b.edge("a", "b").edge("b", "a").set(PropName::left("p"), "a");
        b.state("c");
        let m = b.build().unwrap();
        let u = disjoint_union(&m, &m);
        let z = largest_bisimulation(&m, &u.model).unwrap();
        for s in 0..m.len() {
            for t in 0..m.len() {
                let a = PointedPair::new(s, t);
                assert!(z.contains(a, PointedPair::new(u.embed_left[s], u.embed_left[t])));
                assert!(z.contains(a, PointedPair::new(u.embed_right[s], u.embed_right[t])));
            }
        }
        assert!(check_bisimulation_witness(&z).is_ok());
    }

    #[test]
    fn diagonal_clause() {
        // Two disconnected reflexive points: (x, y) looks like (w, w) on
        // every modal step but is not diagonal.
        let m = reflexive_point();
        let mut b = ModelBuilder::new();
        b.edge("x", "x").edge("y", "y");
        let n = b.build().unwrap();
        assert!(!are_bisimilar(&m, PointedPair::new(0, 0), &n, PointedPair::new(0, 1)).unwrap());
        assert!(are_bisimilar(&m, PointedPair::new(0, 0), &n, PointedPair::new(1, 1)).unwrap());
        let bad = PairRelation {
            left: &m,
            right: &n,
            pairs: [(PointedPair::new(0, 0), PointedPair::new(0, 1))].into(),
        };
        assert_eq!(check_bisimulation_witness(&bad).unwrap_err().clause, Clause::Diagonal);
    }

    #[test]
    fn empty_relation_is_fine() {
        let m = reflexive_point();
        let z = PairRelation {
            left: &m,
            right: &m,
            pairs: BTreeSet::new(),
        };
        assert!(check_bisimulation_witness(&z).is_ok());
    }

    #[test]
    fn sequential_matches_parallel() {
        let mut b = ModelBuilder::new();
        b.edge("a", "b").edge("b", "c").edge("c", "a").edge("a", "c");
        b.set(PropName::right("q"), "b");
        let m = b.build().unwrap();
        assert_eq!(
            largest_bisimulation_with(&m, &m, Exec::Sequential).unwrap().pairs,
            largest_bisimulation_with(&m, &m, Exec::Parallel).unwrap().pairs
        );
    }
}
