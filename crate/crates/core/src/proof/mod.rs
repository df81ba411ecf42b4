//! Line-by-line checking of Hilbert-style derivations in the calculus for
//! the I-free fragment: axioms A1–A3, K for each color, the two
//! distribution axioms R, and the rules Sub, MP and Nec.

mod mutate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decide::{lhs_minus_valid, DecideError, Status};
use crate::syntax::{parse, substitute, Formula, ParseError, PropName, Side, SubstError, Substitution};

pub use mutate::single_mutations;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    #[serde(rename = "K_box")]
    KBox,
    #[serde(rename = "K_bbox")]
    KBbox,
    #[serde(rename = "R_box")]
    RBox,
    #[serde(rename = "R_bbox")]
    RBbox,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::KBox,
        Axiom::KBbox,
        Axiom::RBox,
        Axiom::RBbox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::KBox => "K_box",
            Axiom::KBbox => "K_bbox",
            Axiom::RBox => "R_box",
            Axiom::RBbox => "R_bbox",
        }
    }

    /// Schematic letters and the side each must take, if restricted.
    pub fn letters(self) -> &'static [(&'static str, Option<Side>)] {
        match self {
            Axiom::A1 | Axiom::A3 => &[("p", None), ("q", None)],
            Axiom::A2 => &[("p", None), ("q", None), ("r", None)],
            Axiom::KBox => &[("p", Some(Side::Left)), ("q", Some(Side::Left))],
            Axiom::KBbox => &[("p", Some(Side::Right)), ("q", Some(Side::Right))],
            Axiom::RBox | Axiom::RBbox => &[("pl", Some(Side::Left)), ("pr", Some(Side::Right))],
        }
    }

    fn schema(self) -> Schema {
        use Schema::*;
        let v = |x: &'static str| Var(x);
        let imp = |a: Schema, b: Schema| Implies(Box::new(a), Box::new(b));
        let or = |a: Schema, b: Schema| Or(Box::new(a), Box::new(b));
        let iff = |a: Schema, b: Schema| Iff(Box::new(a), Box::new(b));
        let wbox = |a: Schema| WBox(Box::new(a));
        let bbox = |a: Schema| BBox(Box::new(a));
        let not = |a: Schema| Not(Box::new(a));
        match self {
            Axiom::A1 => imp(v("p"), imp(v("q"), v("p"))),
            Axiom::A2 => imp(
                imp(v("p"), imp(v("q"), v("r"))),
                imp(imp(v("p"), v("q")), imp(v("p"), v("r"))),
            ),
            Axiom::A3 => imp(imp(not(v("q")), not(v("p"))), imp(v("p"), v("q"))),
            Axiom::KBox => imp(
                wbox(imp(v("p"), v("q"))),
                imp(wbox(v("p")), wbox(v("q"))),
            ),
            Axiom::KBbox => imp(
                bbox(imp(v("p"), v("q"))),
                imp(bbox(v("p")), bbox(v("q"))),
            ),
            Axiom::RBox => iff(wbox(or(v("pl"), v("pr"))), or(wbox(v("pl")), v("pr"))),
            Axiom::RBbox => iff(bbox(or(v("pl"), v("pr"))), or(v("pl"), bbox(v("pr")))),
        }
    }

    /// The instance with the given letters; `None` if a letter is missing.
    pub fn instantiate(self, vars: &BTreeMap<String, PropName>) -> Option<Formula> {
        self.schema().build(vars)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Axiom::ALL.into_iter().find(|a| a.name() == s).ok_or(())
    }
}

enum Schema {
    Var(&'static str),
    Not(Box<Schema>),
    Or(Box<Schema>, Box<Schema>),
    Implies(Box<Schema>, Box<Schema>),
    Iff(Box<Schema>, Box<Schema>),
    WBox(Box<Schema>),
    BBox(Box<Schema>),
}

impl Schema {
    fn matches(&self, phi: &Formula, binding: &mut BTreeMap<String, PropName>) -> bool {
        match (self, phi) {
            (Schema::Var(x), Formula::Atom(p)) => match binding.get(*x) {
                Some(q) => q == p,
                None => {
                    binding.insert(x.to_string(), p.clone());
                    true
                }
            },
            (Schema::Not(a), Formula::Not(b))
            | (Schema::WBox(a), Formula::WBox(b))
            | (Schema::BBox(a), Formula::BBox(b)) => a.matches(b, binding),
            (Schema::Or(a1, a2), Formula::Or(b1, b2))
            | (Schema::Implies(a1, a2), Formula::Implies(b1, b2))
            | (Schema::Iff(a1, a2), Formula::Iff(b1, b2)) => {
                a1.matches(b1, binding) && a2.matches(b2, binding)
            }
            _ => false,
        }
    }

    fn build(&self, vars: &BTreeMap<String, PropName>) -> Option<Formula> {
        Some(match self {
            Schema::Var(x) => Formula::Atom(vars.get(*x)?.clone()),
            Schema::Not(a) => Formula::not(a.build(vars)?),
            Schema::WBox(a) => Formula::wbox(a.build(vars)?),
            Schema::BBox(a) => Formula::bbox(a.build(vars)?),
            Schema::Or(a, b) => Formula::or(a.build(vars)?, b.build(vars)?),
            Schema::Implies(a, b) => Formula::implies(a.build(vars)?, b.build(vars)?),
            Schema::Iff(a, b) => Formula::iff(a.build(vars)?, b.build(vars)?),
        })
    }
}

/// Whether `phi` is an instance of the axiom with variables of the
/// permitted sides, returning the letter binding when it is.
pub fn match_axiom(axiom: Axiom, phi: &Formula) -> Result<BTreeMap<String, PropName>, ProofError> {
    let mut binding = BTreeMap::new();
    if !axiom.schema().matches(phi, &mut binding) {
        return Err(ProofError::SchemaMismatch { axiom });
    }
    for (letter, side) in axiom.letters() {
        let var = &binding[*letter];
        if let Some(side) = side {
            if var.side() != *side {
                return Err(ProofError::AxiomSide {
                    axiom,
                    letter: letter.to_string(),
                    var: var.clone(),
                });
            }
        }
    }
    Ok(binding)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        axiom: Axiom,
        /// Optional explicit letter choice; must agree with the formula.
        vars: Option<BTreeMap<String, PropName>>,
        premises: Vec<usize>,
    },
    Sub {
        premises: Vec<usize>,
        left: Substitution,
        right: Substitution,
    },
    Mp {
        premises: Vec<usize>,
    },
    Nec {
        premises: Vec<usize>,
        color: Color,
    },
}

impl Justification {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Axiom { axiom, .. } => axiom.name(),
            Justification::Sub { .. } => "Sub",
            Justification::Mp { .. } => "MP",
            Justification::Nec { color: Color::White, .. } => "Nec_W",
            Justification::Nec { color: Color::Black, .. } => "Nec_B",
        }
    }

    pub fn premises(&self) -> &[usize] {
        match self {
            Justification::Axiom { premises, .. }
            | Justification::Sub { premises, .. }
            | Justification::Mp { premises }
            | Justification::Nec { premises, .. } => premises,
        }
    }

    pub(crate) fn premises_mut(&mut self) -> &mut Vec<usize> {
        match self {
            Justification::Axiom { premises, .. }
            | Justification::Sub { premises, .. }
            | Justification::Mp { premises }
            | Justification::Nec { premises, .. } => premises,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub just: Justification,
}

/// Lines are numbered from 1; premises refer to earlier line numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProofError {
    #[error("the proof has no lines")]
    Empty,
    #[error("formula contains I")]
    ContainsI,
    #[error("formula is not an instance of {axiom}")]
    SchemaMismatch { axiom: Axiom },
    #[error("{axiom} needs letter {letter} on its own side, got {var}")]
    AxiomSide {
        axiom: Axiom,
        letter: String,
        var: PropName,
    },
    #[error("given variable choice for {letter} does not match the formula")]
    VarsDisagree { letter: String },
    #[error("{rule} takes {expected} premise(s), got {got}")]
    PremiseCount {
        rule: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("premise {premise} is not an earlier line")]
    BadPremise { premise: usize },
    #[error("substitution rejected: {0}")]
    SideViolation(String),
    #[error("formula is not the substitution instance of its premise")]
    SubstMismatch,
    #[error("line {major} is not `{minor_formula} -> <this line>`")]
    MpMismatch { major: usize, minor_formula: String },
    #[error("formula is not the {color:?} necessitation of its premise")]
    NecMismatch { color: Color },
}

impl From<SubstError> for ProofError {
    fn from(e: SubstError) -> Self {
        match e {
            SubstError::ContainsI => ProofError::ContainsI,
            e => ProofError::SideViolation(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineError {
    /// 1-based line number; 0 for errors about the proof as a whole.
    pub line: usize,
    pub reason: ProofError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub first_error: Option<LineError>,
}

fn premises_exact(
    rule: &'static str,
    premises: &[usize],
    expected: usize,
    line: usize,
) -> Result<(), ProofError> {
    if premises.len() != expected {
        return Err(ProofError::PremiseCount {
            rule,
            expected,
            got: premises.len(),
        });
    }
    for &p in premises {
        if p == 0 || p >= line {
            return Err(ProofError::BadPremise { premise: p });
        }
    }
    Ok(())
}

fn check_line(proof: &Proof, line: usize) -> Result<(), ProofError> {
    let ProofLine { formula, just } = &proof.lines[line - 1];
    if formula.contains_eq() {
        return Err(ProofError::ContainsI);
    }
    let premise = |i: usize| &proof.lines[i - 1].formula;
    match just {
        Justification::Axiom { axiom, vars, premises } => {
            premises_exact(axiom.name(), premises, 0, line)?;
            let binding = match_axiom(*axiom, formula)?;
            if let Some(vars) = vars {
                for (letter, _) in axiom.letters() {
                    if vars.get(*letter) != binding.get(*letter) {
                        return Err(ProofError::VarsDisagree {
                            letter: letter.to_string(),
                        });
                    }
                }
                if let Some(extra) = vars.keys().find(|k| !binding.contains_key(*k)) {
                    return Err(ProofError::VarsDisagree { letter: extra.clone() });
                }
            }
        }
        Justification::Sub { premises, left, right } => {
            premises_exact("Sub", premises, 1, line)?;
            let expected = substitute(premise(premises[0]), left, right)?;
            if &expected != formula {
                return Err(ProofError::SubstMismatch);
            }
        }
        Justification::Mp { premises } => {
            premises_exact("MP", premises, 2, line)?;
            let (minor, major) = (premises[0], premises[1]);
            let wanted = Formula::implies(premise(minor).clone(), formula.clone());
            if premise(major) != &wanted {
                return Err(ProofError::MpMismatch {
                    major,
                    minor_formula: premise(minor).to_string(),
                });
            }
        }
        Justification::Nec { premises, color } => {
            let rule = just.rule_name();
            premises_exact(rule, premises, 1, line)?;
            let p = premise(premises[0]).clone();
            let wanted = match color {
                Color::White => Formula::wbox(p),
                Color::Black => Formula::bbox(p),
            };
            if &wanted != formula {
                return Err(ProofError::NecMismatch { color: *color });
            }
        }
    }
    Ok(())
}

/// Verifies every line in order and reports the first failure.
pub fn check_proof(p: &Proof) -> CheckReport {
    if p.lines.is_empty() {
        return CheckReport {
            ok: false,
            first_error: Some(LineError {
                line: 0,
                reason: ProofError::Empty,
            }),
        };
    }
    for line in 1..=p.lines.len() {
        if let Err(reason) = check_line(p, line) {
            return CheckReport {
                ok: false,
                first_error: Some(LineError { line, reason }),
            };
        }
    }
    CheckReport {
        ok: true,
        first_error: None,
    }
}

#[derive(Debug, Error)]
pub enum ConclusionError {
    #[error("proof does not check: {0:?}")]
    NotAProof(Option<LineError>),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// Cross-checks the last line of a checked proof with the decision
/// procedure.
pub fn proof_conclusion_valid(p: &Proof) -> Result<bool, ConclusionError> {
    let report = check_proof(p);
    if !report.ok {
        return Err(ConclusionError::NotAProof(report.first_error));
    }
    let last = &p.lines.last().expect("checked proofs are nonempty").formula;
    Ok(lhs_minus_valid(last)?.status == Status::Valid)
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("malformed proof file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: unknown rule `{rule}`")]
    UnknownRule { line: usize, rule: String },
    #[error("line {line}: bad variable `{key}`: {message}")]
    BadVar {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: `{field}` is not allowed for rule {rule}")]
    UnexpectedField {
        line: usize,
        field: &'static str,
        rule: String,
    },
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SubstFile {
    #[serde(default)]
    left: BTreeMap<String, String>,
    #[serde(default)]
    right: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    formula: String,
    rule: String,
    #[serde(default)]
    premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subst: Option<SubstFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<BTreeMap<String, String>>,
}

fn parse_map(line: usize, map: &BTreeMap<String, String>) -> Result<Substitution, ProofFileError> {
    map.iter()
        .map(|(k, v)| {
            let key = PropName::parse_key(k, false).map_err(|e| ProofFileError::BadVar {
                line,
                key: k.clone(),
                message: e.to_string(),
            })?;
            let value = parse(v).map_err(|source| ProofFileError::Formula { line, source })?;
            Ok((key, value))
        })
        .collect()
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Proof, ProofFileError> {
        let raw: Vec<LineFile> = serde_json::from_str(text)?;
        let mut lines = Vec::with_capacity(raw.len());
        for (i, l) in raw.into_iter().enumerate() {
            let line = i + 1;
            let formula = parse(&l.formula).map_err(|source| ProofFileError::Formula { line, source })?;
            let unexpected = |field: &'static str| ProofFileError::UnexpectedField {
                line,
                field,
                rule: l.rule.clone(),
            };
            let just = if let Ok(axiom) = l.rule.parse::<Axiom>() {
                if l.subst.is_some() {
                    return Err(unexpected("subst"));
                }
                let vars = l
                    .vars
                    .as_ref()
                    .map(|vs| {
                        vs.iter()
                            .map(|(k, v)| {
                                let p = PropName::parse_key(v, false).map_err(|e| ProofFileError::BadVar {
                                    line,
                                    key: k.clone(),
                                    message: e.to_string(),
                                })?;
                                Ok((k.clone(), p))
                            })
                            .collect::<Result<BTreeMap<_, _>, ProofFileError>>()
                    })
                    .transpose()?;
                Justification::Axiom {
                    axiom,
                    vars,
                    premises: l.premises,
                }
            } else {
                if l.vars.is_some() {
                    return Err(unexpected("vars"));
                }
                if l.rule != "Sub" && l.subst.is_some() {
                    return Err(unexpected("subst"));
                }
                match l.rule.as_str() {
                    "Sub" => {
                        let s = l.subst.unwrap_or_default();
                        Justification::Sub {
                            premises: l.premises,
                            left: parse_map(line, &s.left)?,
                            right: parse_map(line, &s.right)?,
                        }
                    }
                    "MP" => Justification::Mp { premises: l.premises },
                    "Nec_W" => Justification::Nec {
                        premises: l.premises,
                        color: Color::White,
                    },
                    "Nec_B" => Justification::Nec {
                        premises: l.premises,
                        color: Color::Black,
                    },
                    _ => return Err(ProofFileError::UnknownRule { line, rule: l.rule }),
                }
            };
            lines.push(ProofLine { formula, just });
        }
        Ok(Proof { lines })
    }

    pub fn to_json(&self) -> String {
        let render_map = |m: &Substitution| m.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let raw: Vec<LineFile> = self
            .lines
            .iter()
            .map(|l| {
                let (subst, vars) = match &l.just {
                    Justification::Sub { left, right, .. } => (
                        Some(SubstFile {
                            left: render_map(left),
                            right: render_map(right),
                        }),
                        None,
                    ),
                    Justification::Axiom { vars: Some(vs), .. } => {
                        (None, Some(vs.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()))
                    }
                    _ => (None, None),
                };
                LineFile {
                    formula: l.formula.to_string(),
                    rule: l.just.rule_name().to_string(),
                    premises: l.just.premises().to_vec(),
                    subst,
                    vars,
                }
            })
            .collect();
        serde_json::to_string_pretty(&raw).expect("proofs serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn one_line(formula: &str, rule: &str, extra: &str) -> String {
        format!(r#"[{{"formula": "{formula}", "rule": "{rule}"{extra}}}]"#)
    }

    #[test]
    fn a1_instance() {
        let p = Proof::from_json(&one_line(
            "l:p -> (r:q -> l:p)",
            "A1",
            r#", "vars": {"p": "l:p", "q": "r:q"}"#,
        ))
        .unwrap();
        assert!(check_proof(&p).ok);
    }

    #[test]
    fn side_constraints_on_axioms() {
        assert!(match_axiom(Axiom::KBox, &f("[W](l:a -> l:b) -> ([W]l:a -> [W]l:b)")).is_ok());
        assert!(matches!(
            match_axiom(Axiom::KBox, &f("[W](l:a -> r:b) -> ([W]l:a -> [W]r:b)")),
            Err(ProofError::AxiomSide { .. })
        ));
        assert!(matches!(
            match_axiom(Axiom::RBox, &f("[W](l:a | l:b) <-> ([W]l:a | l:b)")),
            Err(ProofError::AxiomSide { .. })
        ));
        assert!(match_axiom(Axiom::RBbox, &f("[B](l:a | r:b) <-> (l:a | [B]r:b)")).is_ok());
        assert!(matches!(
            match_axiom(Axiom::A1, &f("l:p -> (l:q -> l:q)")),
            Err(ProofError::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn vars_must_agree() {
        let p = Proof::from_json(&one_line(
            "l:p -> (r:q -> l:p)",
            "A1",
            r#", "vars": {"p": "l:p", "q": "r:z"}"#,
        ))
        .unwrap();
        let report = check_proof(&p);
        assert_eq!(report.first_error.unwrap().line, 1);
    }

    #[test]
    fn r_box_then_sub() {
        let text = r#"[
            {"formula": "[W](l:p | r:p) <-> ([W]l:p | r:p)", "rule": "R_box"},
            {"formula": "[W]([W]l:a | <B>r:b) <-> ([W][W]l:a | <B>r:b)", "rule": "Sub",
             "premises": [1], "subst": {"left": {"l:p": "[W]l:a"}, "right": {"r:p": "<B>r:b"}}}
        ]"#;
        let p = Proof::from_json(text).unwrap();
        assert!(check_proof(&p).ok, "{:?}", check_proof(&p));
        assert!(proof_conclusion_valid(&p).unwrap());
    }

    #[test]
    fn sub_side_violation() {
        let text = r#"[
            {"formula": "[W](l:p | r:p) <-> ([W]l:p | r:p)", "rule": "R_box"},
            {"formula": "[W](l:p | [W]l:a) <-> ([W]l:p | [W]l:a)", "rule": "Sub",
             "premises": [1], "subst": {"right": {"r:p": "[W]l:a"}}}
        ]"#;
        let p = Proof::from_json(text).unwrap();
        let err = check_proof(&p).first_error.unwrap();
        assert_eq!(err.line, 2);
        assert!(matches!(err.reason, ProofError::SideViolation(_)));
    }

    #[test]
    fn mp_and_nec() {
        let text = r#"[
            {"formula": "l:p -> (l:p -> l:p)", "rule": "A1"},
            {"formula": "[B](l:p -> (l:p -> l:p))", "rule": "Nec_B", "premises": [1]},
            {"formula": "[W](l:p -> (l:p -> l:p))", "rule": "Nec_W", "premises": [1]}
        ]"#;
        let p = Proof::from_json(text).unwrap();
        assert!(check_proof(&p).ok);
        let bad = r#"[
            {"formula": "l:p -> (l:p -> l:p)", "rule": "A1"},
            {"formula": "l:p", "rule": "MP", "premises": [1, 1]}
        ]"#;
        let p = Proof::from_json(bad).unwrap();
        assert_eq!(check_proof(&p).first_error.unwrap().line, 2);
    }

    #[test]
    fn empty_and_forward_premise() {
        let empty = Proof::default();
        assert_eq!(check_proof(&empty).first_error.unwrap().reason, ProofError::Empty);
        assert!(matches!(
            proof_conclusion_valid(&empty),
            Err(ConclusionError::NotAProof(_))
        ));
        let fwd = r#"[{"formula": "[W](l:p -> (l:p -> l:p))", "rule": "Nec_W", "premises": [1]}]"#;
        let p = Proof::from_json(fwd).unwrap();
        assert_eq!(
            check_proof(&p).first_error.unwrap().reason,
            ProofError::BadPremise { premise: 1 }
        );
    }

    #[test]
    fn file_errors() {
        assert!(matches!(
            Proof::from_json(&one_line("l:p", "A9", "")),
            Err(ProofFileError::UnknownRule { .. })
        ));
        assert!(matches!(
            Proof::from_json(&one_line("l:p ->", "A1", "")),
            Err(ProofFileError::Formula { line: 1, .. })
        ));
        assert!(Proof::from_json(r#"[{"formula": "l:p", "rule": "A1", "extra": 1}]"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"[
            {"formula": "[W](l:p | r:p) <-> ([W]l:p | r:p)", "rule": "R_box", "vars": {"pl": "l:p", "pr": "r:p"}},
            {"formula": "[W]([W]l:a | <B>r:b) <-> ([W][W]l:a | <B>r:b)", "rule": "Sub",
             "premises": [1], "subst": {"left": {"l:p": "[W]l:a"}, "right": {"r:p": "<B>r:b"}}}
        ]"#;
        let p = Proof::from_json(text).unwrap();
        assert_eq!(Proof::from_json(&p.to_json()).unwrap(), p);
    }
}

#[cfg(test)]
mod corpus {
    use super::*;

    #[test]
    fn bundled_proofs_check_and_mutations_fail() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/proofs");
        let mut seen = 0;
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            let p = Proof::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
            let report = check_proof(&p);
            assert!(report.ok, "{}: {:?}", path.display(), report.first_error);
            assert!(proof_conclusion_valid(&p).unwrap(), "{}", path.display());
            for (m, line) in single_mutations(&p) {
                let r = check_proof(&m);
                assert_eq!(r.first_error.map(|e| e.line), Some(line), "{}", m.to_json());
            }
            seen += 1;
        }
        assert!(seen >= 6);
    }
}
