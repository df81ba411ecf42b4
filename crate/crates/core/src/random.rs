//! Seeded generators for formulas and models, shared by the property tests,
//! the benchmarks and `lhs selftest`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Model;
use crate::syntax::{Formula, PropName, Side};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 4] = ["p", "q", "r", "s"];

fn var_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match NAMES.get(i) {
            Some(s) => s.to_string(),
            None => format!("p{i}"),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FormulaConfig {
    pub left_vars: usize,
    pub right_vars: usize,
    /// Maximal nesting of modalities.
    pub modal_depth: usize,
    /// Upper bound on the number of connectives and atoms.
    pub size: usize,
    pub allow_eq: bool,
    /// Whether ⊤, ⊥, ∨, →, ↔, ◇, ◆ may appear, or only primitives.
    pub derived: bool,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig {
            left_vars: 2,
            right_vars: 2,
            modal_depth: 2,
            size: 10,
            allow_eq: false,
            derived: true,
        }
    }
}

impl FormulaConfig {
    pub fn variables(&self) -> Vec<PropName> {
        var_names(self.left_vars)
            .iter()
            .map(|n| PropName::left(n))
            .chain(var_names(self.right_vars).iter().map(|n| PropName::right(n)))
            .collect()
    }
}

/// Which modalities a generator may use.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Palette {
    Both,
    Only(Side),
}

struct Gen<'a, R> {
    rng: &'a mut R,
    cfg: &'a FormulaConfig,
    vars: Vec<PropName>,
    palette: Palette,
}

impl<R: Rng> Gen<'_, R> {
    fn leaf(&mut self) -> Formula {
        let roll = self.rng.gen_range(0..20);
        if self.cfg.allow_eq && roll < 3 {
            return Formula::EqConst;
        }
        if self.cfg.derived && roll == 3 {
            return if self.rng.gen() { Formula::Top } else { Formula::Bot };
        }
        match self.vars.choose(self.rng) {
            Some(p) => Formula::Atom(p.clone()),
            None if self.cfg.derived => Formula::Top,
            None => Formula::not(Formula::Bot),
        }
    }

    fn modal(&mut self, body: Formula) -> Formula {
        let side = match self.palette {
            Palette::Both => {
                if self.rng.gen() {
                    Side::Left
                } else {
                    Side::Right
                }
            }
            Palette::Only(s) => s,
        };
        let dia = self.cfg.derived && self.rng.gen_bool(0.4);
        match (side, dia) {
            (Side::Left, false) => Formula::wbox(body),
            (Side::Left, true) => Formula::wdia(body),
            (Side::Right, false) => Formula::bbox(body),
            (Side::Right, true) => Formula::bdia(body),
        }
    }

    fn formula(&mut self, size: usize, depth: usize) -> Formula {
        if size <= 1 {
            return self.leaf();
        }
        let ops = if self.cfg.derived { 8 } else { 4 };
        match self.rng.gen_range(0..ops) {
            0 => Formula::not(self.formula(size - 1, depth)),
            1 if depth > 0 => {
                let body = self.formula(size - 1, depth - 1);
                self.modal(body)
            }
            5 if depth > 0 => {
                let body = self.formula(size - 1, depth - 1);
                self.modal(body)
            }
            k => {
                let left = if size >= 3 { self.rng.gen_range(1..=size - 2) } else { 1 };
                let a = self.formula(left, depth);
                let b = self.formula((size - 1 - left).max(1), depth);
                match k % 4 {
                    0..=2 if !self.cfg.derived => Formula::and(a, b),
                    _ if !self.cfg.derived => Formula::not(Formula::and(a, Formula::not(b))),
                    0 => Formula::and(a, b),
                    1 => Formula::or(a, b),
                    2 => Formula::implies(a, b),
                    _ => Formula::iff(a, b),
                }
            }
        }
    }
}

/// A random formula of the full language (or the I-free fragment, when
/// `allow_eq` is off) with modal depth at most `cfg.modal_depth`.
pub fn random_formula<R: Rng>(rng: &mut R, cfg: &FormulaConfig) -> Formula {
    let size = rng.gen_range(1..=cfg.size.max(1));
    let vars = cfg.variables();
    Gen {
        rng,
        cfg,
        vars,
        palette: Palette::Both,
    }
    .formula(size, cfg.modal_depth)
}

/// A random formula of `L_□` (side left) or `L_■` (side right).
pub fn random_one_sided<R: Rng>(rng: &mut R, cfg: &FormulaConfig, side: Side) -> Formula {
    let size = rng.gen_range(1..=cfg.size.max(1));
    let vars = cfg.variables().into_iter().filter(|p| p.side() == side).collect();
    let cfg = FormulaConfig {
        allow_eq: false,
        ..cfg.clone()
    };
    Gen {
        rng,
        cfg: &cfg,
        vars,
        palette: Palette::Only(side),
    }
    .formula(size, cfg.modal_depth)
}

/// A Boolean combination of up to `blocks` one-sided formulas.
pub fn random_clean<R: Rng>(rng: &mut R, cfg: &FormulaConfig, blocks: usize) -> Formula {
    let k = rng.gen_range(1..=blocks.max(1));
    let leaves: Vec<Formula> = (0..k)
        .map(|_| {
            let side = if rng.gen() { Side::Left } else { Side::Right };
            let small = FormulaConfig {
                size: cfg.size.div_ceil(2).max(1),
                ..cfg.clone()
            };
            random_one_sided(rng, &small, side)
        })
        .collect();
    let mut acc = leaves[0].clone();
    for b in leaves.into_iter().skip(1) {
        let b = if rng.gen_bool(0.3) { Formula::not(b) } else { b };
        acc = match rng.gen_range(0..4) {
            0 => Formula::and(acc, b),
            1 => Formula::or(acc, b),
            2 => Formula::implies(acc, b),
            _ => Formula::iff(acc, b),
        };
    }
    if rng.gen_bool(0.2) {
        Formula::not(acc)
    } else {
        acc
    }
}

/// A random model with `1..=max_states` states named `w0, w1, …`, each
/// edge present with probability `edge_prob`, and a random valuation of
/// `props`.
pub fn random_model<R: Rng>(rng: &mut R, max_states: usize, props: &[PropName], edge_prob: f64) -> Model {
    let n = rng.gen_range(1..=max_states.max(1));
    let states = (0..n).map(|i| format!("w{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(edge_prob) {
                edges.push((a, b));
            }
        }
    }
    let valuation: BTreeMap<PropName, BTreeSet<usize>> = props
        .iter()
        .map(|p| (p.clone(), (0..n).filter(|_| rng.gen()).collect()))
        .collect();
    Model::new(states, edges, valuation).expect("generated models are well-formed")
}
