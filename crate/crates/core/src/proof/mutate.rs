//! Single-point corruptions of a proof, each of which is guaranteed by
//! construction to break the line it touches while leaving earlier lines
//! intact. Used to exercise the checker's error reporting.

use std::collections::BTreeSet;

use crate::syntax::{Formula, PropName, Side};

use super::{Axiom, Color, Justification, Proof, ProofLine};

/// Changes the outermost connective to a different one.
fn swap_top(phi: &Formula) -> Formula {
    match phi.clone() {
        Formula::Atom(_) | Formula::EqConst => Formula::not(phi.clone()),
        Formula::Top => Formula::Bot,
        Formula::Bot => Formula::Top,
        Formula::Not(a) => *a,
        Formula::And(a, b) => Formula::Or(a, b),
        Formula::Or(a, b) => Formula::And(a, b),
        Formula::Implies(a, b) => Formula::Iff(a, b),
        Formula::Iff(a, b) => Formula::Implies(a, b),
        Formula::WBox(a) => Formula::BBox(a),
        Formula::BBox(a) => Formula::WBox(a),
        Formula::WDia(a) => Formula::BDia(a),
        Formula::BDia(a) => Formula::WDia(a),
    }
}

/// Replaces the first atom (pre-order) with a variable of the same side
/// that does not occur in the proof.
fn rename_first_atom(phi: &Formula, used: &BTreeSet<PropName>) -> Option<Formula> {
    fn go(phi: &Formula, to: &dyn Fn(&PropName) -> PropName, done: &mut bool) -> Formula {
        if *done {
            return phi.clone();
        }
        if let Formula::Atom(p) = phi {
            *done = true;
            return Formula::Atom(to(p));
        }
        let kids = phi.children().into_iter().map(|c| go(c, to, done)).collect();
        phi.with_children(kids)
    }
    let fresh = |p: &PropName| {
        (0..)
            .filter_map(|k| PropName::new(p.side(), format!("mut{k}")).ok())
            .find(|q| !used.contains(q))
            .expect("unbounded supply")
    };
    let mut done = false;
    let out = go(phi, &fresh, &mut done);
    done.then_some(out)
}

fn rule_variants(just: &Justification) -> Vec<Justification> {
    let premises = just.premises().to_vec();
    let mut out: Vec<Justification> = Axiom::ALL
        .into_iter()
        .map(|axiom| Justification::Axiom {
            axiom,
            vars: None,
            premises: premises.clone(),
        })
        .collect();
    out.push(Justification::Mp {
        premises: premises.clone(),
    });
    let is_sub = matches!(just, Justification::Sub { .. });
    // A substitution instance can happen to be the necessitation of its
    // premise (p ↦ [W]p), so Sub lines are never relabelled as Nec.
    if !is_sub {
        for color in [Color::White, Color::Black] {
            out.push(Justification::Nec {
                premises: premises.clone(),
                color,
            });
        }
    }
    out.push(Justification::Sub {
        premises,
        left: Default::default(),
        right: Default::default(),
    });
    out.retain(|j| j.rule_name() != just.rule_name());
    if is_sub {
        out.retain(|j| !matches!(j, Justification::Sub { .. }));
    }
    out
}

/// Every variable mentioned anywhere in the proof, substitutions included.
fn proof_vars(proof: &Proof) -> BTreeSet<PropName> {
    let mut vars = BTreeSet::new();
    for line in &proof.lines {
        vars.extend(line.formula.vars());
        if let Justification::Sub { left, right, .. } = &line.just {
            for (k, v) in left.iter().chain(right) {
                vars.insert(k.clone());
                vars.extend(v.vars());
            }
        }
    }
    vars
}

/// How many whole-formula replacements by an unused atom each line gets.
const FRESH_ATOMS: usize = 8;

/// Every corruption of every line, paired with the 1-based line it breaks.
pub fn single_mutations(proof: &Proof) -> Vec<(Proof, usize)> {
    let used = proof_vars(proof);
    // An atom is never an axiom instance or a necessitation, and one that
    // occurs nowhere else cannot come out of Sub or MP either.
    let fresh_atoms: Vec<Formula> = (0..)
        .map(|k| {
            let side = if k % 2 == 0 { Side::Left } else { Side::Right };
            PropName::new(side, format!("mut{}", k / 2)).expect("valid name")
        })
        .filter(|p| !used.contains(p))
        .take(FRESH_ATOMS)
        .map(Formula::Atom)
        .collect();
    let mut out = Vec::new();
    for (i, line) in proof.lines.iter().enumerate() {
        let n = i + 1;
        let mut variants: Vec<ProofLine> = Vec::new();
        let with_formula = |formula: Formula| ProofLine {
            formula,
            just: line.just.clone(),
        };
        variants.push(with_formula(swap_top(&line.formula)));
        variants.push(with_formula(Formula::not(line.formula.clone())));
        variants.extend(fresh_atoms.iter().cloned().map(with_formula));
        // For axioms a renamed letter may still give an instance.
        if !matches!(line.just, Justification::Axiom { .. }) {
            if let Some(phi) = rename_first_atom(&line.formula, &used) {
                variants.push(with_formula(phi));
            }
        }
        for just in rule_variants(&line.just) {
            variants.push(ProofLine {
                formula: line.formula.clone(),
                just,
            });
        }
        let premise_edit = |edit: &dyn Fn(&mut Vec<usize>)| {
            let mut l = line.clone();
            edit(l.just.premises_mut());
            l
        };
        variants.push(premise_edit(&|p| p.push(1)));
        if !line.just.premises().is_empty() {
            variants.push(premise_edit(&|p| {
                p.pop();
            }));
            variants.push(premise_edit(&|p| p[0] = n));
            variants.push(premise_edit(&|p| p[0] = 0));
        }
        for v in variants {
            let mut p = proof.clone();
            p.lines[i] = v;
            out.push((p, n));
        }
    }
    out
}
