//! The tiling construction: a tile set compiles to a formula `φ_T` of the
//! full language whose models encode tilings of the quarter plane, and a
//! periodic tiling unfolds into a finite torus model of `φ_T` with a spy
//! point seeing every grid cell.
//!
//! Labels `u`, `r` and `t1..tn` become the atoms `l:u`, `l:r_`, `l:ti` and
//! their right copies; `r` is spelled `r_` so it cannot be confused with the
//! side prefix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Model, StateId};
use crate::syntax::{Formula, PropName};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tile {
    pub name: String,
    pub up: String,
    pub down: String,
    pub left: String,
    pub right: String,
}

/// Tile types in a fixed order; tile `i` (from 1) is labelled `ti`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileSet {
    tiles: Vec<Tile>,
}

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("a tile set needs at least one tile")]
    EmptyTileSet,
    #[error("duplicate tile name `{0}`")]
    DuplicateTile(String),
    #[error("period components must be positive")]
    ZeroPeriod,
    #[error("cell key `{0}` is not of the form `x,y`")]
    BadCellKey(String),
    #[error("cell ({x},{y}) lies outside the period")]
    CellOutOfRange { x: usize, y: usize },
    #[error("tiling is invalid: {0}")]
    Invalid(Violation),
}

impl TileSet {
    pub fn new(tiles: Vec<Tile>) -> Result<TileSet, TilingError> {
        if tiles.is_empty() {
            return Err(TilingError::EmptyTileSet);
        }
        let mut seen = BTreeSet::new();
        for t in &tiles {
            if !seen.insert(t.name.as_str()) {
                return Err(TilingError::DuplicateTile(t.name.clone()));
            }
        }
        Ok(TileSet { tiles })
    }

    pub fn from_json(text: &str) -> Result<TileSet, TilingError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            tiles: Vec<Tile>,
        }
        TileSet::new(serde_json::from_str::<File>(text)?.tiles)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tile sets serialize")
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// 0-based position of the tile with this name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }
}

/// An assignment of tiles to the cells of a `p × q` torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTiling {
    pub period: (usize, usize),
    pub assign: BTreeMap<(usize, usize), String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingFile {
    period: (usize, usize),
    assign: BTreeMap<String, String>,
}

impl PeriodicTiling {
    pub fn new(period: (usize, usize), assign: BTreeMap<(usize, usize), String>) -> Result<Self, TilingError> {
        if period.0 == 0 || period.1 == 0 {
            return Err(TilingError::ZeroPeriod);
        }
        if let Some(&(x, y)) = assign.keys().find(|(x, y)| *x >= period.0 || *y >= period.1) {
            return Err(TilingError::CellOutOfRange { x, y });
        }
        Ok(PeriodicTiling { period, assign })
    }

    /// Every cell gets the same tile.
    pub fn uniform(period: (usize, usize), tile: &str) -> Self {
        let assign = (0..period.0)
            .flat_map(|x| (0..period.1).map(move |y| (x, y)))
            .map(|c| (c, tile.to_string()))
            .collect();
        PeriodicTiling { period, assign }
    }

    pub fn from_json(text: &str) -> Result<Self, TilingError> {
        let raw: TilingFile = serde_json::from_str(text)?;
        let mut assign = BTreeMap::new();
        for (key, tile) in raw.assign {
            let cell = key
                .split_once(',')
                .and_then(|(x, y)| Some((x.trim().parse().ok()?, y.trim().parse().ok()?)))
                .ok_or_else(|| TilingError::BadCellKey(key.clone()))?;
            assign.insert(cell, tile);
        }
        PeriodicTiling::new(raw.period, assign)
    }

    pub fn to_json(&self) -> String {
        let raw = TilingFile {
            period: self.period,
            assign: self
                .assign
                .iter()
                .map(|((x, y), t)| (format!("{x},{y}"), t.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("tilings serialize")
    }
}

/// The first failed matching constraint, scanning rows bottom-up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingCell { x: usize, y: usize },
    UnknownTile { x: usize, y: usize, name: String },
    /// `right` of `(x,y)` differs from `left` of its right neighbour.
    Horizontal { x: usize, y: usize, right: String, left: String },
    /// `up` of `(x,y)` differs from `down` of the cell above.
    Vertical { x: usize, y: usize, up: String, down: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingCell { x, y } => write!(f, "cell ({x},{y}) has no tile"),
            Violation::UnknownTile { x, y, name } => write!(f, "cell ({x},{y}) uses unknown tile `{name}`"),
            Violation::Horizontal { x, y, right, left } => write!(
                f,
                "horizontal mismatch at ({x},{y}): right color `{right}` vs left color `{left}`"
            ),
            Violation::Vertical { x, y, up, down } => {
                write!(f, "vertical mismatch at ({x},{y}): up color `{up}` vs down color `{down}`")
            }
        }
    }
}

/// Checks wrap-around matching of all cells.
pub fn validate_tiling(ts: &TileSet, pt: &PeriodicTiling) -> Result<(), Violation> {
    let (p, q) = pt.period;
    let mut tile = BTreeMap::new();
    for y in 0..q {
        for x in 0..p {
            let name = pt.assign.get(&(x, y)).ok_or(Violation::MissingCell { x, y })?;
            let i = ts.index_of(name).ok_or_else(|| Violation::UnknownTile {
                x,
                y,
                name: name.clone(),
            })?;
            tile.insert((x, y), &ts.tiles[i]);
        }
    }
    for y in 0..q {
        for x in 0..p {
            let here = tile[&(x, y)];
            let east = tile[&((x + 1) % p, y)];
            if here.right != east.left {
                return Err(Violation::Horizontal {
                    x,
                    y,
                    right: here.right.clone(),
                    left: east.left.clone(),
                });
            }
            let north = tile[&(x, (y + 1) % q)];
            if here.up != north.down {
                return Err(Violation::Vertical {
                    x,
                    y,
                    up: here.up.clone(),
                    down: north.down.clone(),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The formula

fn label_names(n: usize) -> Vec<String> {
    ["u".to_string(), "r_".to_string()]
        .into_iter()
        .chain((1..=n).map(|i| format!("t{i}")))
        .collect()
}

struct Vocab {
    labels: Vec<String>,
    n: usize,
}

impl Vocab {
    fn l(&self, name: &str) -> Formula {
        Formula::l(name)
    }

    fn r(&self, name: &str) -> Formula {
        Formula::r(name)
    }

    fn tl(&self) -> Formula {
        Formula::disj((1..=self.n).map(|i| self.l(&format!("t{i}"))))
    }

    fn tr(&self) -> Formula {
        Formula::disj((1..=self.n).map(|i| self.r(&format!("t{i}"))))
    }

    /// `tˡ ∧ ◇(labelˡ ∧ ◇(tˡ ∧ φ))`
    fn dia_step(&self, label: &str, phi: Formula) -> Formula {
        Formula::and(
            self.tl(),
            Formula::wdia(Formula::and(
                self.l(label),
                Formula::wdia(Formula::and(self.tl(), phi)),
            )),
        )
    }

    /// The black version over right atoms.
    fn bdia_step(&self, label: &str, phi: Formula) -> Formula {
        Formula::and(
            self.tr(),
            Formula::bdia(Formula::and(
                self.r(label),
                Formula::bdia(Formula::and(self.tr(), phi)),
            )),
        )
    }

    fn box_step(&self, label: &str, phi: Formula) -> Formula {
        Formula::not(self.dia_step(label, Formula::not(phi)))
    }

    fn bbox_step(&self, label: &str, phi: Formula) -> Formula {
        Formula::not(self.bdia_step(label, Formula::not(phi)))
    }

    /// `□■(antecedent ∧ I → ◇(labelˡ ∧ ■(labelʳ → I)))`
    fn unique_step(&self, antecedent: Formula, left: Formula, right: Formula) -> Formula {
        Formula::wbox(Formula::bbox(Formula::implies(
            Formula::and(antecedent, Formula::EqConst),
            Formula::wdia(Formula::and(
                left,
                Formula::bbox(Formula::implies(right, Formula::EqConst)),
            )),
        )))
    }
}

/// `φ_T` as its named conjuncts, in the order SP, VL1, VL2, TU1, TU2, TR1,
/// TR2, URT, T1, T2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiT {
    pub components: Vec<(&'static str, Formula)>,
}

impl PhiT {
    /// The left-nested conjunction of all components.
    pub fn formula(&self) -> Formula {
        Formula::conj(self.components.iter().map(|(_, f)| f.clone()))
    }

    pub fn component(&self, name: &str) -> Option<&Formula> {
        self.components.iter().find(|(n, _)| *n == name).map(|(_, f)| f)
    }
}

pub fn generate_phi(ts: &TileSet) -> PhiT {
    let n = ts.len();
    let v = Vocab {
        labels: label_names(n),
        n,
    };
    let i = || Formula::EqConst;

    let sp = Formula::conj([
        i(),
        Formula::wbox(Formula::wbox(Formula::bdia(i()))),
        Formula::wdia(v.tl()),
    ]);
    let vl1 = Formula::wbox(Formula::bbox(Formula::implies(
        i(),
        Formula::conj(v.labels.iter().map(|p| Formula::iff(v.l(p), v.r(p)))),
    )));
    let vl2 = Formula::wbox(Formula::conj(v.labels.iter().map(|p| {
        Formula::iff(
            v.l(p),
            Formula::conj(v.labels.iter().filter(|q| *q != p).map(|q| Formula::not(v.l(q)))),
        )
    })));
    let tu1 = v.unique_step(v.tl(), v.l("u"), v.r("u"));
    let tu2 = v.unique_step(v.l("u"), v.tl(), v.tr());
    let tr1 = v.unique_step(v.tl(), v.l("r_"), v.r("r_"));
    let tr2 = v.unique_step(v.l("r_"), v.tl(), v.tr());
    let urt = Formula::wbox(Formula::bbox(Formula::implies(
        Formula::and(v.tl(), i()),
        v.box_step("u", v.bbox_step("r_", v.dia_step("r_", v.bdia_step("u", i())))),
    )));
    let group3 = |label: &str, fits: &dyn Fn(&Tile, &Tile) -> bool| {
        Formula::wbox(Formula::implies(
            v.tl(),
            Formula::conj(ts.tiles.iter().enumerate().map(|(a, ta)| {
                let targets = ts
                    .tiles
                    .iter()
                    .enumerate()
                    .filter(|(_, tb)| fits(ta, tb))
                    .map(|(b, _)| v.l(&format!("t{}", b + 1)));
                Formula::implies(
                    v.l(&format!("t{}", a + 1)),
                    v.dia_step(label, Formula::disj(targets)),
                )
            })),
        ))
    };
    let t1 = group3("u", &|a, b| a.up == b.down);
    let t2 = group3("r_", &|a, b| a.right == b.left);

    PhiT {
        components: vec![
            ("SP", sp),
            ("VL1", vl1),
            ("VL2", vl2),
            ("TU1", tu1),
            ("TU2", tu2),
            ("TR1", tr1),
            ("TR2", tr2),
            ("URT", urt),
            ("T1", t1),
            ("T2", t2),
        ],
    }
}

// ---------------------------------------------------------------------------
// The torus model

/// Name of the grid state `(a, b)`.
pub fn grid_state_name(a: usize, b: usize) -> String {
    format!("g{a}_{b}")
}

pub const SPY: &str = "s";

/// Unfolds a valid periodic tiling with period `(p, q)` onto the
/// `2p × 2q` torus of cells `(a, b)` with `a·b` even: tile cells at
/// (even, even), `r` connectors at (odd, even) and `u` connectors at
/// (even, odd). `r` edges run along even rows, `u` edges along even
/// columns, and the spy sees every grid state. Returns the model and the
/// spy's id.
pub fn torus_model(ts: &TileSet, pt: &PeriodicTiling) -> Result<(Model, StateId), TilingError> {
    validate_tiling(ts, pt).map_err(TilingError::Invalid)?;
    let (w, h) = (2 * pt.period.0, 2 * pt.period.1);
    let cells: Vec<(usize, usize)> = (0..h)
        .flat_map(|b| (0..w).map(move |a| (a, b)))
        .filter(|(a, b)| a * b % 2 == 0)
        .collect();
    let id: BTreeMap<(usize, usize), StateId> = cells.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
    let mut states = vec![SPY.to_string()];
    states.extend(cells.iter().map(|&(a, b)| grid_state_name(a, b)));

    let mut edges = Vec::new();
    for (&(a, b), &from) in &id {
        edges.push((0, from));
        if b % 2 == 0 {
            edges.push((from, id[&((a + 1) % w, b)]));
        }
        if a % 2 == 0 {
            edges.push((from, id[&(a, (b + 1) % h)]));
        }
    }

    let mut by_label: BTreeMap<String, BTreeSet<StateId>> =
        label_names(ts.len()).into_iter().map(|l| (l, BTreeSet::new())).collect();
    for (&(a, b), &state) in &id {
        let label = match (a % 2, b % 2) {
            (1, 0) => "r_".to_string(),
            (0, 1) => "u".to_string(),
            _ => {
                let tile = &pt.assign[&(a / 2, b / 2)];
                format!("t{}", ts.index_of(tile).expect("validated") + 1)
            }
        };
        by_label.get_mut(&label).expect("known label").insert(state);
    }
    let mut valuation = BTreeMap::new();
    for (label, set) in by_label {
        valuation.insert(PropName::left(&label), set.clone());
        valuation.insert(PropName::right(&label), set);
    }
    let model = Model::new(states, edges, valuation).expect("torus models are well-formed");
    Ok((model, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PointedPair;
    use crate::semantics::check;

    fn tile(name: &str, up: &str, down: &str, left: &str, right: &str) -> Tile {
        Tile {
            name: name.into(),
            up: up.into(),
            down: down.into(),
            left: left.into(),
            right: right.into(),
        }
    }

    fn one_tile() -> TileSet {
        TileSet::new(vec![tile("T1", "c", "c", "c", "c")]).unwrap()
    }

    #[test]
    fn sp_rendering() {
        let ts = TileSet::new(vec![tile("A", "a", "a", "a", "a"), tile("B", "b", "b", "b", "b")]).unwrap();
        let phi = generate_phi(&ts);
        assert_eq!(phi.component("SP").unwrap().to_string(), "I & [W][W]<B>I & <W>(l:t1 | l:t2)");
        let names: Vec<_> = phi.components.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["SP", "VL1", "VL2", "TU1", "TU2", "TR1", "TR2", "URT", "T1", "T2"]);
    }

    #[test]
    fn one_tile_group3() {
        let t1 = Formula::l("t1");
        let dia_u = |phi: Formula| {
            Formula::and(
                t1.clone(),
                Formula::wdia(Formula::and(Formula::l("u"), Formula::wdia(Formula::and(t1.clone(), phi)))),
            )
        };
        let phi = generate_phi(&one_tile());
        assert_eq!(
            phi.component("T1").unwrap(),
            &Formula::wbox(Formula::implies(t1.clone(), Formula::implies(t1.clone(), dia_u(t1.clone()))))
        );
        let skew = TileSet::new(vec![tile("T1", "x", "y", "c", "c")]).unwrap();
        assert_eq!(
            generate_phi(&skew).component("T1").unwrap(),
            &Formula::wbox(Formula::implies(t1.clone(), Formula::implies(t1.clone(), dia_u(Formula::Bot))))
        );
    }

    #[test]
    fn validation() {
        let ts = one_tile();
        assert!(validate_tiling(&ts, &PeriodicTiling::uniform((1, 1), "T1")).is_ok());
        let bad = TileSet::new(vec![tile("T1", "c", "c", "a", "b")]).unwrap();
        assert!(matches!(
            validate_tiling(&bad, &PeriodicTiling::uniform((1, 1), "T1")),
            Err(Violation::Horizontal { x: 0, y: 0, .. })
        ));
        let missing = PeriodicTiling::new((2, 1), [((0, 0), "T1".to_string())].into()).unwrap();
        assert_eq!(validate_tiling(&ts, &missing), Err(Violation::MissingCell { x: 1, y: 0 }));
    }

    #[test]
    fn checkerboard() {
        let ts = TileSet::new(vec![tile("A", "x", "y", "p", "q"), tile("B", "y", "x", "q", "p")]).unwrap();
        let text = r#"{"period": [2, 2], "assign": {"0,0": "A", "1,0": "B", "0,1": "B", "1,1": "A"}}"#;
        let pt = PeriodicTiling::from_json(text).unwrap();
        assert!(validate_tiling(&ts, &pt).is_ok());
        assert_eq!(PeriodicTiling::from_json(&pt.to_json()).unwrap(), pt);
        let (m, spy) = torus_model(&ts, &pt).unwrap();
        assert!(check(&m, PointedPair::new(spy, spy), &generate_phi(&ts).formula()).unwrap());
    }

    #[test]
    fn unit_torus() {
        let ts = one_tile();
        let (m, spy) = torus_model(&ts, &PeriodicTiling::uniform((1, 1), "T1")).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.successors(spy).len(), 3);
        let phi = generate_phi(&ts);
        for (name, c) in &phi.components {
            assert!(check(&m, PointedPair::new(spy, spy), c).unwrap(), "{name}");
        }
    }

    #[test]
    fn file_errors() {
        assert!(matches!(TileSet::from_json(r#"{"tiles": []}"#), Err(TilingError::EmptyTileSet)));
        assert!(matches!(
            PeriodicTiling::from_json(r#"{"period": [1, 1], "assign": {"0;0": "T1"}}"#),
            Err(TilingError::BadCellKey(_))
        ));
        assert!(matches!(
            PeriodicTiling::from_json(r#"{"period": [0, 1], "assign": {}}"#),
            Err(TilingError::ZeroPeriod)
        ));
    }
}
