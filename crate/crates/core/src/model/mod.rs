//! Finite models `(W, R, V)` with one accessibility relation shared by both
//! players, the JSON model format, and the standard constructions on them.

mod enumerate;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{NameError, PropName, Side};

pub use enumerate::{
    enumerate_models, model_count, ModelEnumerator, DEFAULT_ENUMERATION_CEILING,
};

/// Index of a state inside its [`Model`].
pub type StateId = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed model file: {0}")]
    Schema(String),
    #[error("a model needs at least one state")]
    NoStates,
    #[error("state `{0}` is declared twice")]
    DuplicateState(String),
    #[error("reference to undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("state index {0} is out of range")]
    StateOutOfRange(StateId),
    #[error("bad variable name: {0}")]
    BadPropName(#[from] NameError),
    #[error("generating set must be nonempty")]
    EmptyGenerator,
    #[error("refusing to enumerate {count} models (ceiling {ceiling}); pass force to override")]
    ResourceGuard { count: u128, ceiling: u128 },
}

/// A pointed pair: Hider at `s`, Seeker at `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointedPair {
    pub s: StateId,
    pub t: StateId,
}

impl PointedPair {
    pub fn new(s: StateId, t: StateId) -> Self {
        PointedPair { s, t }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    states: Vec<String>,
    index: HashMap<String, StateId>,
    succ: Vec<Vec<StateId>>,
    valuation: BTreeMap<PropName, BTreeSet<StateId>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    states: Vec<String>,
    edges: Vec<(String, String)>,
    valuation: BTreeMap<String, Vec<String>>,
}

impl Model {
    /// Builds a model from state names, index edges and an index valuation.
    pub fn new(
        states: Vec<String>,
        edges: impl IntoIterator<Item = (StateId, StateId)>,
        valuation: BTreeMap<PropName, BTreeSet<StateId>>,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        let n = states.len();
        let mut succ = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n {
                return Err(ModelError::StateOutOfRange(a));
            }
            if b >= n {
                return Err(ModelError::StateOutOfRange(b));
            }
            succ[a].push(b);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        if let Some(&w) = valuation.values().flatten().find(|&&w| w >= n) {
            return Err(ModelError::StateOutOfRange(w));
        }
        Ok(Model {
            states,
            index,
            succ,
            valuation,
        })
    }

    /// Builds a model whose edges and valuation refer to states by name.
    pub fn from_named(
        states: Vec<String>,
        edges: &[(String, String)],
        valuation: &BTreeMap<PropName, Vec<String>>,
    ) -> Result<Self, ModelError> {
        let index: HashMap<&str, StateId> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UndeclaredState(name.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        let valuation = valuation
            .iter()
            .map(|(p, ws)| {
                let set = ws.iter().map(|w| lookup(w)).collect::<Result<_, _>>()?;
                Ok((p.clone(), set))
            })
            .collect::<Result<_, ModelError>>()?;
        Model::new(states, edges, valuation)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
        let valuation = file
            .valuation
            .iter()
            .map(|(k, v)| Ok((PropName::parse_key(k, true)?, v.clone())))
            .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
        Model::from_named(file.states, &file.edges, &valuation)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            states: self.states.clone(),
            edges: self
                .edges()
                .map(|(a, b)| (self.states[a].clone(), self.states[b].clone()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, ws)| {
                    (
                        p.to_string(),
                        ws.iter().map(|&w| self.states[w].clone()).collect(),
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, w: StateId) -> &str {
        &self.states[w]
    }

    pub fn state_index(&self, name: &str) -> Result<StateId, ModelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UndeclaredState(name.to_string()))
    }

    /// `R(w)`, sorted.
    pub fn successors(&self, w: StateId) -> &[StateId] {
        &self.succ[w]
    }

    pub fn successors_of(&self, name: &str) -> Result<BTreeSet<&str>, ModelError> {
        let w = self.state_index(name)?;
        Ok(self.succ[w].iter().map(|&v| self.states[v].as_str()).collect())
    }

    pub fn has_edge(&self, a: StateId, b: StateId) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn valuation(&self) -> &BTreeMap<PropName, BTreeSet<StateId>> {
        &self.valuation
    }

    /// `w ∈ V(p)`; variables the model does not mention are false everywhere.
    pub fn holds(&self, p: &PropName, w: StateId) -> bool {
        self.valuation.get(p).is_some_and(|ws| ws.contains(&w))
    }

    /// Variables the valuation mentions.
    pub fn props(&self) -> BTreeSet<PropName> {
        self.valuation.keys().cloned().collect()
    }

    pub fn check_state(&self, w: StateId) -> Result<(), ModelError> {
        if w < self.len() {
            Ok(())
        } else {
            Err(ModelError::StateOutOfRange(w))
        }
    }

    /// The submodel generated by `roots`: the smallest set containing the
    /// roots and closed under successors, with edges and valuation
    /// restricted to it. State names are preserved.
    pub fn generated_submodel(&self, roots: &[StateId]) -> Result<Model, ModelError> {
        if roots.is_empty() {
            return Err(ModelError::EmptyGenerator);
        }
        let mut keep = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &r in roots {
            self.check_state(r)?;
            if !keep[r] {
                keep[r] = true;
                queue.push_back(r);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.succ[w] {
                if !keep[v] {
                    keep[v] = true;
                    queue.push_back(v);
                }
            }
        }
        let mut remap = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        for (w, _) in keep.iter().enumerate().filter(|(_, k)| **k) {
            remap[w] = states.len();
            states.push(self.states[w].clone());
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| keep[a] && keep[b])
            .map(|(a, b)| (remap[a], remap[b]))
            .collect();
        let valuation = self
            .valuation
            .iter()
            .map(|(p, ws)| {
                let set = ws.iter().filter(|&&w| keep[w]).map(|&w| remap[w]).collect();
                (p.clone(), set)
            })
            .collect();
        Model::new(states, edges, valuation)
    }

    /// Keeps only the valuation of one side; the frame is unchanged.
    pub fn restrict(&self, side: Side) -> Model {
        let mut m = self.clone();
        m.valuation.retain(|p, _| p.side() == side);
        m
    }

    pub fn restrict_left(&self) -> Model {
        self.restrict(Side::Left)
    }

    pub fn restrict_right(&self) -> Model {
        self.restrict(Side::Right)
    }

    /// Copy of the model with every state name prefixed.
    pub fn renamed(&self, prefix: &str) -> Model {
        let states = self.states.iter().map(|s| format!("{prefix}{s}")).collect();
        Model::new(states, self.edges(), self.valuation.clone()).expect("renaming keeps validity")
    }

    /// Reorders states by a permutation: old state `w` becomes position
    /// `perm[w]`. Used to build isomorphic copies.
    pub fn permuted(&self, perm: &[StateId]) -> Model {
        assert_eq!(perm.len(), self.len());
        let mut states = vec![String::new(); self.len()];
        for (w, &to) in perm.iter().enumerate() {
            states[to] = self.states[w].clone();
        }
        let edges: Vec<_> = self.edges().map(|(a, b)| (perm[a], perm[b])).collect();
        let valuation = self
            .valuation
            .iter()
            .map(|(p, ws)| (p.clone(), ws.iter().map(|&w| perm[w]).collect()))
            .collect();
        Model::new(states, edges, valuation).expect("permutation keeps validity")
    }
}

/// Result of [`disjoint_union`]: the union and where each side's states went.
#[derive(Clone, Debug)]
pub struct Union {
    pub model: Model,
    pub embed_left: Vec<StateId>,
    pub embed_right: Vec<StateId>,
}

/// Side-by-side union with no cross edges. States of `m` are renamed with
/// prefix `a.`, states of `n` with `b.`.
pub fn disjoint_union(m: &Model, n: &Model) -> Union {
    let offset = m.len();
    let states = m
        .states
        .iter()
        .map(|s| format!("a.{s}"))
        .chain(n.states.iter().map(|s| format!("b.{s}")))
        .collect();
    let edges: Vec<_> = m
        .edges()
        .chain(n.edges().map(|(a, b)| (a + offset, b + offset)))
        .collect();
    let mut valuation: BTreeMap<PropName, BTreeSet<StateId>> = m.valuation.clone();
    for (p, ws) in &n.valuation {
        valuation
            .entry(p.clone())
            .or_default()
            .extend(ws.iter().map(|w| w + offset));
    }
    Union {
        model: Model::new(states, edges, valuation).expect("union of valid models"),
        embed_left: (0..m.len()).collect(),
        embed_right: (offset..offset + n.len()).collect(),
    }
}

/// Incremental construction by name, convenient in tests and generators.
#[derive(Default, Clone, Debug)]
pub struct ModelBuilder {
    states: Vec<String>,
    edges: Vec<(StateId, StateId)>,
    valuation: BTreeMap<PropName, BTreeSet<StateId>>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a state (or finds an existing one) and returns its index.
    pub fn state(&mut self, name: &str) -> StateId {
        match self.states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.states.push(name.to_string());
                self.states.len() - 1
            }
        }
    }

    pub fn edge(&mut self, a: &str, b: &str) -> &mut Self {
        let a = self.state(a);
        let b = self.state(b);
        self.edges.push((a, b));
        self
    }

    pub fn set(&mut self, p: PropName, w: &str) -> &mut Self {
        let w = self.state(w);
        self.valuation.entry(p).or_default().insert(w);
        self
    }

    pub fn build(&self) -> Result<Model, ModelError> {
        Model::new(self.states.clone(), self.edges.clone(), self.valuation.clone())
    }
}
