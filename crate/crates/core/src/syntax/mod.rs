//! Formulas of the two-agent language: data model, concrete syntax,
//! sublanguage classification and side-respecting substitution.

mod dag;
mod parser;
mod printer;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use dag::{Dag, Node, NodeId};
pub use parser::{parse, parse_internal, ParseError};
pub use printer::{render, render_full};

/// Prefix reserved for variables introduced by the normalizer.
pub const FRESH_PREFIX: &str = "_fresh";

/// Which house a propositional variable belongs to: `l:` atoms are read at
/// the Hider's position, `r:` atoms at the Seeker's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn prefix(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("missing side prefix in `{0}` (expected `l:` or `r:`)")]
    MissingSide(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdent(String),
    #[error("identifier `{0}` uses the reserved prefix `_fresh`")]
    Reserved(String),
}

/// A propositional variable: a side together with an identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropName {
    side: Side,
    name: String,
}

fn is_user_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_internal_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PropName {
    /// A user-facing variable. The identifier must start with a letter.
    pub fn new(side: Side, name: impl Into<String>) -> Result<Self, NameError> {
        let name = name.into();
        if name.starts_with(FRESH_PREFIX) {
            return Err(NameError::Reserved(name));
        }
        if !is_user_ident(&name) {
            return Err(NameError::InvalidIdent(name));
        }
        Ok(PropName { side, name })
    }

    /// Variables generated by the library itself (fresh padding variables,
    /// decomposition placeholders). Panics on a malformed identifier.
    pub(crate) fn internal(side: Side, name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_internal_ident(&name), "malformed internal identifier {name}");
        PropName { side, name }
    }

    pub fn left(name: &str) -> Self {
        Self::new(Side::Left, name).expect("valid identifier")
    }

    pub fn right(name: &str) -> Self {
        Self::new(Side::Right, name).expect("valid identifier")
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_fresh(&self) -> bool {
        self.name.starts_with(FRESH_PREFIX)
    }

    /// Parses the `l:name` / `r:name` form. Reserved names are accepted only
    /// when `allow_reserved` is set.
    pub fn parse_key(text: &str, allow_reserved: bool) -> Result<Self, NameError> {
        let (side, name) = match text.split_once(':') {
            Some(("l", name)) => (Side::Left, name),
            Some(("r", name)) => (Side::Right, name),
            _ => return Err(NameError::MissingSide(text.to_string())),
        };
        if allow_reserved && name.starts_with('_') && is_internal_ident(name) {
            return Ok(PropName::internal(side, name));
        }
        PropName::new(side, name)
    }
}

impl fmt::Display for PropName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side.prefix(), self.name)
    }
}

impl FromStr for PropName {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropName::parse_key(s, false)
    }
}

impl Serialize for PropName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PropName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        PropName::parse_key(&text, true).map_err(serde::de::Error::custom)
    }
}

/// Abstract syntax tree. Derived connectives are first-class nodes so that
/// printed formulas keep the shape they were written in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(PropName),
    /// The equality constant `I`: true exactly when both positions coincide.
    EqConst,
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    WBox(Box<Formula>),
    WDia(Box<Formula>),
    BBox(Box<Formula>),
    BDia(Box<Formula>),
}

impl Formula {
    pub fn atom(p: PropName) -> Self {
        Formula::Atom(p)
    }

    pub fn l(name: &str) -> Self {
        Formula::Atom(PropName::left(name))
    }

    pub fn r(name: &str) -> Self {
        Formula::Atom(PropName::right(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn wbox(a: Formula) -> Self {
        Formula::WBox(Box::new(a))
    }

    pub fn wdia(a: Formula) -> Self {
        Formula::WDia(Box::new(a))
    }

    pub fn bbox(a: Formula) -> Self {
        Formula::BBox(Box::new(a))
    }

    pub fn bdia(a: Formula) -> Self {
        Formula::BDia(Box::new(a))
    }

    /// Left-nested conjunction; `true` for an empty iterator.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `false` for an empty iterator.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// `p & ~p` over the given variable.
    pub fn contradiction(p: PropName) -> Self {
        Formula::and(Formula::Atom(p.clone()), Formula::not(Formula::Atom(p)))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::EqConst | Formula::Top | Formula::Bot => vec![],
            Formula::Not(a)
            | Formula::WBox(a)
            | Formula::WDia(a)
            | Formula::BBox(a)
            | Formula::BDia(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn is_modal(&self) -> bool {
        matches!(
            self,
            Formula::WBox(_) | Formula::WDia(_) | Formula::BBox(_) | Formula::BDia(_)
        )
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::EqConst => false,
            f if f.is_modal() => false,
            f => f.children().into_iter().all(Formula::is_propositional),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn modal_depth(&self) -> usize {
        let inner = self
            .children()
            .into_iter()
            .map(Formula::modal_depth)
            .max()
            .unwrap_or(0);
        if self.is_modal() {
            inner + 1
        } else {
            inner
        }
    }

    pub fn contains_eq(&self) -> bool {
        matches!(self, Formula::EqConst) || self.children().into_iter().any(Formula::contains_eq)
    }

    pub fn is_i_free(&self) -> bool {
        !self.contains_eq()
    }

    /// Every propositional variable occurring in the formula.
    pub fn vars(&self) -> BTreeSet<PropName> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<PropName>) {
        if let Formula::Atom(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// Rebuilds a node with the same connective over new children.
    pub(crate) fn with_children(&self, mut kids: Vec<Formula>) -> Formula {
        let mut next = || Box::new(kids.remove(0));
        match self {
            Formula::Atom(_) | Formula::EqConst | Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(_) => Formula::Not(next()),
            Formula::WBox(_) => Formula::WBox(next()),
            Formula::WDia(_) => Formula::WDia(next()),
            Formula::BBox(_) => Formula::BBox(next()),
            Formula::BDia(_) => Formula::BDia(next()),
            Formula::And(..) => {
                let a = next();
                Formula::And(a, next())
            }
            Formula::Or(..) => {
                let a = next();
                Formula::Or(a, next())
            }
            Formula::Implies(..) => {
                let a = next();
                Formula::Implies(a, next())
            }
            Formula::Iff(..) => {
                let a = next();
                Formula::Iff(a, next())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Formulas serialize as their concrete syntax.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&render(self))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_internal(&text).map_err(serde::de::Error::custom)
    }
}

impl FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Deduplicated subformulas in post-order; the formula itself comes last.
pub fn subformulas(phi: &Formula) -> Vec<Formula> {
    fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
        if seen.contains(f) {
            return;
        }
        for c in f.children() {
            walk(c, seen, out);
        }
        if seen.insert(f) {
            out.push(f);
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    walk(phi, &mut seen, &mut out);
    out.into_iter().cloned().collect()
}

/// Sublanguage membership flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SyntaxClass {
    pub i_free: bool,
    /// Left atoms and white modalities only.
    pub white_only: bool,
    /// Right atoms and black modalities only.
    pub black_only: bool,
    /// A Boolean combination of white-only and black-only blocks.
    pub clean: bool,
}

#[derive(Clone, Copy, Default)]
struct Occurs {
    eq: bool,
    white: bool,
    black: bool,
    left: bool,
    right: bool,
}

impl Occurs {
    fn union(self, o: Occurs) -> Occurs {
        Occurs {
            eq: self.eq || o.eq,
            white: self.white || o.white,
            black: self.black || o.black,
            left: self.left || o.left,
            right: self.right || o.right,
        }
    }

    fn white_only(self) -> bool {
        !self.eq && !self.black && !self.right
    }

    fn black_only(self) -> bool {
        !self.eq && !self.white && !self.left
    }
}

fn occurs_and_clean(phi: &Formula) -> (Occurs, bool) {
    let mut occ = Occurs::default();
    let mut kids_clean = true;
    for c in phi.children() {
        let (o, cl) = occurs_and_clean(c);
        occ = occ.union(o);
        kids_clean &= cl;
    }
    match phi {
        Formula::Atom(p) => match p.side() {
            Side::Left => occ.left = true,
            Side::Right => occ.right = true,
        },
        Formula::EqConst => occ.eq = true,
        Formula::WBox(_) | Formula::WDia(_) => occ.white = true,
        Formula::BBox(_) | Formula::BDia(_) => occ.black = true,
        _ => {}
    }
    let one_sided = occ.white_only() || occ.black_only();
    let clean = one_sided
        || (!occ.eq && !phi.is_modal() && !matches!(phi, Formula::EqConst) && kids_clean);
    (occ, clean)
}

pub fn classify(phi: &Formula) -> SyntaxClass {
    let (occ, clean) = occurs_and_clean(phi);
    SyntaxClass {
        i_free: !occ.eq,
        white_only: occ.white_only(),
        black_only: occ.black_only(),
        clean,
    }
}

pub fn is_white_only(phi: &Formula) -> bool {
    occurs_and_clean(phi).0.white_only()
}

pub fn is_black_only(phi: &Formula) -> bool {
    occurs_and_clean(phi).0.black_only()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution for {var} must be a {expected} formula, got `{value}`")]
    SideViolation {
        var: PropName,
        expected: &'static str,
        value: String,
    },
    #[error("substitution key {var} is on the wrong side")]
    KeyOnWrongSide { var: PropName },
    #[error("substitution target contains I")]
    ContainsI,
}

pub type Substitution = BTreeMap<PropName, Formula>;

/// Simultaneous uniform substitution of left variables by white-only
/// formulas and right variables by black-only formulas.
pub fn substitute(
    phi: &Formula,
    left_map: &Substitution,
    right_map: &Substitution,
) -> Result<Formula, SubstError> {
    if phi.contains_eq() {
        return Err(SubstError::ContainsI);
    }
    for (var, value) in left_map {
        if var.side() != Side::Left {
            return Err(SubstError::KeyOnWrongSide { var: var.clone() });
        }
        if !is_white_only(value) {
            return Err(SubstError::SideViolation {
                var: var.clone(),
                expected: "white-only",
                value: render(value),
            });
        }
    }
    for (var, value) in right_map {
        if var.side() != Side::Right {
            return Err(SubstError::KeyOnWrongSide { var: var.clone() });
        }
        if !is_black_only(value) {
            return Err(SubstError::SideViolation {
                var: var.clone(),
                expected: "black-only",
                value: render(value),
            });
        }
    }
    Ok(replace_atoms(phi, &|p| {
        left_map.get(p).or_else(|| right_map.get(p)).cloned()
    }))
}

/// Unchecked simultaneous replacement of atoms.
pub(crate) fn replace_atoms(phi: &Formula, map: &dyn Fn(&PropName) -> Option<Formula>) -> Formula {
    match phi {
        Formula::Atom(p) => map(p).unwrap_or_else(|| phi.clone()),
        _ => {
            let kids = phi
                .children()
                .into_iter()
                .map(|c| replace_atoms(c, map))
                .collect();
            phi.with_children(kids)
        }
    }
}

/// Smallest `_fresh<k>` of the given side that is not in `avoid`.
pub fn fresh_var(side: Side, avoid: &BTreeSet<PropName>) -> PropName {
    (0..)
        .map(|k| PropName::internal(side, format!("{FRESH_PREFIX}{k}")))
        .find(|p| !avoid.contains(p))
        .expect("unbounded supply")
}
