use std::collections::HashSet;

use crate::syntax::{Formula, PropName};

use super::NormalError;

/// A propositional literal: a variable and its polarity.
pub type Literal = (PropName, bool);

/// A clause is a disjunction of literals; an empty clause is `false`.
pub type Clause = Vec<Literal>;

/// Clause ceiling for the naive distribution.
pub const DEFAULT_CLAUSE_CEILING: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Nnf {
    Lit(PropName, bool),
    Top,
    Bot,
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
}

/// Total work allowed, as a multiple of the clause ceiling, before a
/// conversion is abandoned. Keeps pathological inputs from running for
/// minutes before hitting the ceiling.
const WORK_FACTOR: usize = 16;

struct Converter {
    ceiling: usize,
    reduce: bool,
    work: usize,
}

impl Converter {
    fn spend(&mut self, n: usize) -> Result<(), NormalError> {
        self.work = self.work.saturating_add(n);
        if self.work > self.ceiling.saturating_mul(WORK_FACTOR) {
            return Err(NormalError::TooLarge {
                clauses: self.work,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    fn both(&mut self, a: &Formula, pa: bool, b: &Formula, pb: bool, conj: bool) -> Result<Nnf, NormalError> {
        let a = Box::new(self.nnf(a, pa)?);
        let b = Box::new(self.nnf(b, pb)?);
        Ok(if conj { Nnf::And(a, b) } else { Nnf::Or(a, b) })
    }

    fn nnf(&mut self, phi: &Formula, positive: bool) -> Result<Nnf, NormalError> {
        self.spend(1)?;
        match phi {
            Formula::Atom(p) => Ok(Nnf::Lit(p.clone(), positive)),
            Formula::Top => Ok(if positive { Nnf::Top } else { Nnf::Bot }),
            Formula::Bot => Ok(if positive { Nnf::Bot } else { Nnf::Top }),
            Formula::Not(a) => self.nnf(a, !positive),
            Formula::And(a, b) => self.both(a, positive, b, positive, positive),
            Formula::Or(a, b) => self.both(a, positive, b, positive, !positive),
            // a -> b  ==  ~a | b ;  ~(a -> b)  ==  a & ~b
            Formula::Implies(a, b) => self.both(a, !positive, b, positive, !positive),
            Formula::Iff(a, b) => {
                // a <-> b  ==  (~a | b) & (a | ~b)
                // ~(a <-> b)  ==  (a | b) & (~a | ~b)
                let (x, y) = if positive {
                    (self.both(a, false, b, true, false)?, self.both(a, true, b, false, false)?)
                } else {
                    (self.both(a, true, b, true, false)?, self.both(a, false, b, false, false)?)
                };
                Ok(Nnf::And(Box::new(x), Box::new(y)))
            }
            Formula::EqConst
            | Formula::WBox(_)
            | Formula::WDia(_)
            | Formula::BBox(_)
            | Formula::BDia(_) => Err(NormalError::ModalInput),
        }
    }

    fn too_large(&self, clauses: usize) -> Result<(), NormalError> {
        if clauses > self.ceiling {
            return Err(NormalError::TooLarge {
                clauses,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    fn distribute(&mut self, n: &Nnf) -> Result<Vec<Clause>, NormalError> {
        let out = match n {
            Nnf::Lit(p, pos) => vec![vec![(p.clone(), *pos)]],
            Nnf::Top => vec![],
            Nnf::Bot => vec![vec![]],
            Nnf::And(a, b) => {
                let mut out = self.distribute(a)?;
                out.extend(self.distribute(b)?);
                self.too_large(out.len())?;
                out
            }
            Nnf::Or(a, b) => {
                let xs = self.distribute(a)?;
                let ys = self.distribute(b)?;
                self.too_large(xs.len().saturating_mul(ys.len()))?;
                let reduce = self.reduce;
                xs.iter()
                    .flat_map(|x| ys.iter().map(move |y| merge(x, y)))
                    .filter(|c| !(reduce && is_tautology(c)))
                    .collect()
            }
        };
        self.spend(out.len())?;
        Ok(if self.reduce { reduce(out) } else { out })
    }
}

fn merge(a: &Clause, b: &Clause) -> Clause {
    let mut out = a.clone();
    for lit in b {
        if !out.contains(lit) {
            out.push(lit.clone());
        }
    }
    out
}

fn is_tautology(c: &Clause) -> bool {
    c.iter().any(|(p, pos)| c.contains(&(p.clone(), !pos)))
}

/// Clauses whose literal sets contain another clause's are implied by it.
const SUBSUMPTION_LIMIT: usize = 1024;

fn reduce(clauses: Vec<Clause>) -> Vec<Clause> {
    let mut seen = HashSet::new();
    let mut out: Vec<Clause> = Vec::new();
    for c in clauses {
        let mut key = c.clone();
        key.sort();
        if seen.insert(key) {
            out.push(c);
        }
    }
    if out.len() > SUBSUMPTION_LIMIT {
        return out;
    }
    let subsumes = |a: &Clause, b: &Clause| a.len() <= b.len() && a.iter().all(|l| b.contains(l));
    let keep: Vec<bool> = (0..out.len())
        .map(|i| {
            !(0..out.len()).any(|j| {
                j != i
                    && subsumes(&out[j], &out[i])
                    // Of two equal sets keep the first.
                    && (out[j].len() < out[i].len() || j < i)
            })
        })
        .collect();
    out.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

/// Clause list of a propositional formula: eliminate `->`/`<->`, push
/// negations to the atoms, distribute `|` over `&`, and drop repeated
/// literals inside a clause. Nothing else is simplified. `true` yields no
/// clauses and `false` a single empty clause.
pub fn prop_clauses(alpha: &Formula, ceiling: usize) -> Result<Vec<Clause>, NormalError> {
    clauses_with(alpha, ceiling, false)
}

/// Like [`prop_clauses`], additionally dropping tautological, repeated and
/// subsumed clauses along the way.
pub(crate) fn clauses_with(alpha: &Formula, ceiling: usize, reduce: bool) -> Result<Vec<Clause>, NormalError> {
    let mut cx = Converter {
        ceiling,
        reduce,
        work: 0,
    };
    let n = cx.nnf(alpha, true)?;
    cx.distribute(&n)
}

pub fn literal_formula((p, pos): &Literal) -> Formula {
    let a = Formula::atom(p.clone());
    if *pos {
        a
    } else {
        Formula::not(a)
    }
}

/// Left-nested conjunction of left-nested clause disjunctions.
pub fn clauses_formula(clauses: &[Clause]) -> Formula {
    Formula::conj(
        clauses
            .iter()
            .map(|c| Formula::disj(c.iter().map(literal_formula))),
    )
}

/// The function h: a CNF formula classically equivalent to `alpha`.
pub fn prop_cnf(alpha: &Formula) -> Result<Formula, NormalError> {
    Ok(clauses_formula(&prop_clauses(alpha, DEFAULT_CLAUSE_CEILING)?))
}

fn is_literal(phi: &Formula) -> bool {
    match phi {
        Formula::Atom(_) => true,
        Formula::Not(a) => matches!(**a, Formula::Atom(_)),
        _ => false,
    }
}

fn is_clause(phi: &Formula) -> bool {
    match phi {
        Formula::Or(a, b) => is_clause(a) && is_clause(b),
        _ => is_literal(phi),
    }
}

/// Shape check: a conjunction of disjunctions of literals. `false` counts
/// as the empty clause and a lone `true` as the empty conjunction, matching
/// what [`prop_cnf`] prints.
pub fn is_cnf(phi: &Formula) -> bool {
    fn conjuncts(phi: &Formula) -> bool {
        match phi {
            Formula::And(a, b) => conjuncts(a) && conjuncts(b),
            Formula::Bot => true,
            _ => is_clause(phi),
        }
    }
    *phi == Formula::Top || conjuncts(phi)
}
