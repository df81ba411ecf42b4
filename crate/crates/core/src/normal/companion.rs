use serde::Serialize;

use crate::syntax::{classify, Formula, Side};

use super::clean::convert;
use super::cnf::DEFAULT_CLAUSE_CEILING;
use super::{CleanCnf, FreshSupply, NormalError};

/// How connectives outside `¬, ∧, [W], [B]` are handled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum CompanionStyle {
    /// Rewrite `∨, →, ↔, ◇, ◆, ⊤, ⊥` into the primitives first, then apply
    /// the recursion literally. Sizes grow doubly exponentially through
    /// nested negations, so this is practical only for small inputs.
    Strict,
    /// Same recursion for atoms, `¬`, `∧`, `[W]`, `[B]`; a binary derived
    /// connective is handled as `f(op(a_c, b_c))`, a diamond as the
    /// negated box of the negation, and any clean non-atomic subformula
    /// as `f(φ)` directly. Padding is dropped before a result is fed back
    /// into `f`, and those inner conversions discard tautological, repeated
    /// and subsumed clauses. Semantically interchangeable with `Strict`.
    #[default]
    Compact,
}

/// The clean CNF companion in the default style.
pub fn companion(phi: &Formula) -> Result<CleanCnf, NormalError> {
    companion_with(phi, CompanionStyle::default())
}

pub fn companion_with(phi: &Formula, style: CompanionStyle) -> Result<CleanCnf, NormalError> {
    companion_bounded(phi, style, DEFAULT_CLAUSE_CEILING)
}

/// Like [`companion_with`], with `ceiling` in place of the default clause
/// ceiling (the work budget scales with it).
pub fn companion_bounded(phi: &Formula, style: CompanionStyle, ceiling: usize) -> Result<CleanCnf, NormalError> {
    if phi.contains_eq() {
        return Err(NormalError::ContainsI);
    }
    let mut cx = Companion {
        supply: FreshSupply::new(phi.vars()),
        ceiling,
        reduce: style == CompanionStyle::Compact,
    };
    match style {
        CompanionStyle::Strict => {
            let prim = cx.primitive(phi);
            cx.strict(&prim)
        }
        CompanionStyle::Compact => cx.compact(phi),
    }
}

struct Companion {
    supply: FreshSupply,
    ceiling: usize,
    reduce: bool,
}

impl Companion {
    fn f(&mut self, phi: &Formula) -> Result<CleanCnf, NormalError> {
        convert(phi, &mut self.supply, self.ceiling, self.reduce)
    }

    fn check_size(&self, n: usize) -> Result<(), NormalError> {
        if n > self.ceiling {
            return Err(NormalError::TooLarge {
                clauses: n,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    fn atom(&mut self, phi: &Formula) -> CleanCnf {
        let Formula::Atom(p) = phi else {
            unreachable!("atom clause called on a non-atom")
        };
        let pair = match p.side() {
            Side::Left => (phi.clone(), Formula::contradiction(self.supply.draw(Side::Right))),
            Side::Right => (Formula::contradiction(self.supply.draw(Side::Left)), phi.clone()),
        };
        CleanCnf {
            conjuncts: vec![pair],
        }
    }

    fn conj(&self, a: CleanCnf, b: CleanCnf) -> Result<CleanCnf, NormalError> {
        self.check_size(a.len() + b.len())?;
        let mut conjuncts = a.conjuncts;
        conjuncts.extend(b.conjuncts);
        Ok(CleanCnf { conjuncts })
    }

    fn white_box(a: CleanCnf) -> CleanCnf {
        CleanCnf {
            conjuncts: a
                .conjuncts
                .into_iter()
                .map(|(psi, gamma)| (Formula::wbox(psi), gamma))
                .collect(),
        }
    }

    fn black_box(a: CleanCnf) -> CleanCnf {
        CleanCnf {
            conjuncts: a
                .conjuncts
                .into_iter()
                .map(|(psi, gamma)| (psi, Formula::bbox(gamma)))
                .collect(),
        }
    }

    fn negate(&mut self, a: CleanCnf) -> Result<CleanCnf, NormalError> {
        self.f(&Formula::not(a.to_formula()))
    }

    /// `f(¬φ_c)` after dropping padding disjuncts from `φ_c`.
    fn negate_stripped(&mut self, a: CleanCnf) -> Result<CleanCnf, NormalError> {
        self.f(&Formula::not(strip_pads(&a.to_formula())))
    }

    /// Rewrites derived connectives into `¬, ∧, [W], [B]` and atoms. `⊥`
    /// becomes a contradiction over a new left variable.
    fn primitive(&mut self, phi: &Formula) -> Formula {
        use Formula as F;
        let neg = F::not;
        match phi {
            F::Atom(_) | F::EqConst => phi.clone(),
            F::Bot => F::contradiction(self.supply.draw(Side::Left)),
            F::Top => {
                let bot = self.primitive(&F::Bot);
                neg(bot)
            }
            F::Not(a) => neg(self.primitive(a)),
            F::And(a, b) => {
                let a = self.primitive(a);
                F::and(a, self.primitive(b))
            }
            F::Or(a, b) => {
                let a = self.primitive(a);
                let b = self.primitive(b);
                neg(F::and(neg(a), neg(b)))
            }
            F::Implies(a, b) => {
                let a = self.primitive(a);
                let b = self.primitive(b);
                neg(F::and(a, neg(b)))
            }
            F::Iff(a, b) => {
                let a = self.primitive(a);
                let b = self.primitive(b);
                F::and(
                    neg(F::and(a.clone(), neg(b.clone()))),
                    neg(F::and(b, neg(a))),
                )
            }
            F::WBox(a) => F::wbox(self.primitive(a)),
            F::BBox(a) => F::bbox(self.primitive(a)),
            F::WDia(a) => neg(F::wbox(neg(self.primitive(a)))),
            F::BDia(a) => neg(F::bbox(neg(self.primitive(a)))),
        }
    }

    fn strict(&mut self, phi: &Formula) -> Result<CleanCnf, NormalError> {
        match phi {
            Formula::Atom(_) => Ok(self.atom(phi)),
            Formula::Not(a) => {
                let a = self.strict(a)?;
                self.negate(a)
            }
            Formula::And(a, b) => {
                let a = self.strict(a)?;
                let b = self.strict(b)?;
                self.conj(a, b)
            }
            Formula::WBox(a) => Ok(Self::white_box(self.strict(a)?)),
            Formula::BBox(a) => Ok(Self::black_box(self.strict(a)?)),
            Formula::EqConst => Err(NormalError::ContainsI),
            _ => unreachable!("derived connectives are rewritten before the recursion"),
        }
    }

    fn compact(&mut self, phi: &Formula) -> Result<CleanCnf, NormalError> {
        use Formula as F;
        if !matches!(phi, F::Atom(_)) && classify(phi).clean {
            return self.f(phi);
        }
        match phi {
            F::Atom(_) => Ok(self.atom(phi)),
            F::EqConst => Err(NormalError::ContainsI),
            F::Top | F::Bot => self.f(phi),
            F::Not(a) => {
                let a = self.compact(a)?;
                self.negate_stripped(a)
            }
            F::And(a, b) => {
                let a = self.compact(a)?;
                let b = self.compact(b)?;
                self.conj(a, b)
            }
            F::Or(a, b) | F::Implies(a, b) | F::Iff(a, b) => {
                let a = strip_pads(&self.compact(a)?.to_formula());
                let b = strip_pads(&self.compact(b)?.to_formula());
                self.f(&phi.with_children(vec![a, b]))
            }
            F::WBox(a) => Ok(Self::white_box(self.compact(a)?)),
            F::BBox(a) => Ok(Self::black_box(self.compact(a)?)),
            F::WDia(a) => {
                let na = self.compact(a)?;
                let na = self.negate_stripped(na)?;
                self.negate_stripped(Self::white_box(na))
            }
            F::BDia(a) => {
                let na = self.compact(a)?;
                let na = self.negate_stripped(na)?;
                self.negate_stripped(Self::black_box(na))
            }
        }
    }
}

fn is_pad(phi: &Formula) -> bool {
    match phi {
        Formula::And(a, b) => match (&**a, &**b) {
            (Formula::Atom(p), Formula::Not(q)) => p.is_fresh() && **q == Formula::Atom(p.clone()),
            _ => false,
        },
        _ => false,
    }
}

/// Removes `x | (p & ~p)` padding over fresh variables: `x | ⊥` is `x`.
/// Used only on inputs to `f`, whose output is padded again.
fn strip_pads(phi: &Formula) -> Formula {
    match phi {
        Formula::Or(a, b) if is_pad(a) => strip_pads(b),
        Formula::Or(a, b) if is_pad(b) => strip_pads(a),
        _ => {
            let kids = phi.children().into_iter().map(strip_pads).collect();
            phi.with_children(kids)
        }
    }
}
