use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::{Model, StateId};
use crate::syntax::{Formula, PropName, Side};

/// First-order formulas over unary predicates `Pl_<name>` / `Pr_<name>`, the
/// binary relation `R` and equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    True,
    False,
    Pred(PropName, String),
    Rel(String, String),
    Eq(String, String),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Iff(Box<FoFormula>, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
}

struct Translator<'a> {
    next: usize,
    reserved: [&'a str; 2],
}

impl Translator<'_> {
    fn fresh(&mut self) -> String {
        loop {
            let name = format!("z{}", self.next);
            self.next += 1;
            if !self.reserved.contains(&name.as_str()) {
                return name;
            }
        }
    }

    fn go(&mut self, phi: &Formula, x: &str, y: &str) -> FoFormula {
        use FoFormula as F;
        let bx = Box::new;
        match phi {
            Formula::Atom(p) => match p.side() {
                Side::Left => F::Pred(p.clone(), x.to_string()),
                Side::Right => F::Pred(p.clone(), y.to_string()),
            },
            Formula::EqConst => F::Eq(x.to_string(), y.to_string()),
            Formula::Top => F::True,
            Formula::Bot => F::False,
            Formula::Not(a) => F::Not(bx(self.go(a, x, y))),
            Formula::And(a, b) => {
                let a = self.go(a, x, y);
                F::And(bx(a), bx(self.go(b, x, y)))
            }
            Formula::Or(a, b) => {
                let a = self.go(a, x, y);
                F::Or(bx(a), bx(self.go(b, x, y)))
            }
            Formula::Implies(a, b) => {
                let a = self.go(a, x, y);
                F::Implies(bx(a), bx(self.go(b, x, y)))
            }
            Formula::Iff(a, b) => {
                let a = self.go(a, x, y);
                F::Iff(bx(a), bx(self.go(b, x, y)))
            }
            Formula::WBox(a) => {
                let z = self.fresh();
                let body = self.go(a, &z, y);
                F::Forall(z.clone(), bx(F::Implies(bx(F::Rel(x.into(), z)), bx(body))))
            }
            Formula::WDia(a) => {
                let z = self.fresh();
                let body = self.go(a, &z, y);
                F::Exists(z.clone(), bx(F::And(bx(F::Rel(x.into(), z)), bx(body))))
            }
            Formula::BBox(a) => {
                let z = self.fresh();
                let body = self.go(a, x, &z);
                F::Forall(z.clone(), bx(F::Implies(bx(F::Rel(y.into(), z)), bx(body))))
            }
            Formula::BDia(a) => {
                let z = self.fresh();
                let body = self.go(a, x, &z);
                F::Exists(z.clone(), bx(F::And(bx(F::Rel(y.into(), z)), bx(body))))
            }
        }
    }
}

/// Standard translation with free variables `x` (Hider) and `y` (Seeker).
/// Bound variables are `z0, z1, ...` in left-to-right order, each bound once.
pub fn fo_translate(phi: &Formula, x: &str, y: &str) -> FoFormula {
    let mut tr = Translator {
        next: 0,
        reserved: [x, y],
    };
    tr.go(phi, x, y)
}

/// Tarskian satisfaction over the finite domain of `m`.
pub fn fo_eval(
    m: &Model,
    alpha: &FoFormula,
    env: &HashMap<String, StateId>,
) -> Result<bool, FoError> {
    let mut env = env.clone();
    eval(m, alpha, &mut env)
}

fn eval(m: &Model, alpha: &FoFormula, env: &mut HashMap<String, StateId>) -> Result<bool, FoError> {
    let lookup = |env: &HashMap<String, StateId>, v: &str| {
        env.get(v).copied().ok_or_else(|| FoError::Unbound(v.to_string()))
    };
    Ok(match alpha {
        FoFormula::True => true,
        FoFormula::False => false,
        FoFormula::Pred(p, v) => m.holds(p, lookup(env, v)?),
        FoFormula::Rel(a, b) => m.has_edge(lookup(env, a)?, lookup(env, b)?),
        FoFormula::Eq(a, b) => lookup(env, a)? == lookup(env, b)?,
        FoFormula::Not(a) => !eval(m, a, env)?,
        FoFormula::And(a, b) => eval(m, a, env)? && eval(m, b, env)?,
        FoFormula::Or(a, b) => eval(m, a, env)? || eval(m, b, env)?,
        FoFormula::Implies(a, b) => !eval(m, a, env)? || eval(m, b, env)?,
        FoFormula::Iff(a, b) => eval(m, a, env)? == eval(m, b, env)?,
        FoFormula::Forall(v, body) | FoFormula::Exists(v, body) => {
            let universal = matches!(alpha, FoFormula::Forall(..));
            let saved = env.get(v).copied();
            let mut result = universal;
            for w in 0..m.len() {
                env.insert(v.clone(), w);
                if eval(m, body, env)? != universal {
                    result = !universal;
                    break;
                }
            }
            match saved {
                Some(w) => env.insert(v.clone(), w),
                None => env.remove(v),
            };
            result
        }
    })
}

fn pred_name(p: &PropName) -> String {
    let side = match p.side() {
        Side::Left => "Pl",
        Side::Right => "Pr",
    };
    format!("{side}_{}", p.name())
}

impl FoFormula {
    fn is_binary(&self) -> bool {
        matches!(
            self,
            FoFormula::And(..) | FoFormula::Or(..) | FoFormula::Implies(..) | FoFormula::Iff(..)
        )
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_binary() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &FoFormula, op: &str, b: &FoFormula| {
            a.fmt_operand(f)?;
            write!(f, " {op} ")?;
            b.fmt_operand(f)
        };
        match self {
            FoFormula::True => f.write_str("true"),
            FoFormula::False => f.write_str("false"),
            FoFormula::Pred(p, v) => write!(f, "{}({v})", pred_name(p)),
            FoFormula::Rel(a, b) => write!(f, "R({a},{b})"),
            FoFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            FoFormula::Not(a) => {
                f.write_str("~")?;
                if matches!(**a, FoFormula::Eq(..)) {
                    write!(f, "({a})")
                } else {
                    a.fmt_operand(f)
                }
            }
            FoFormula::And(a, b) => bin(f, a, "&", b),
            FoFormula::Or(a, b) => bin(f, a, "|", b),
            FoFormula::Implies(a, b) => bin(f, a, "->", b),
            FoFormula::Iff(a, b) => bin(f, a, "<->", b),
            FoFormula::Forall(v, body) => {
                write!(f, "forall {v}. ")?;
                body.fmt_operand(f)
            }
            FoFormula::Exists(v, body) => {
                write!(f, "exists {v}. ")?;
                body.fmt_operand(f)
            }
        }
    }
}
