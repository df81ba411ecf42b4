use std::fs;
use std::path::{Path, PathBuf};

use lhs_core::decide::{lhs_bounded_sat, BoundedResult};
use lhs_core::semantics::check;
use lhs_core::tiling::{generate_phi, grid_state_name, torus_model, validate_tiling, PeriodicTiling, TileSet, Violation};
use lhs_core::{Model, PointedPair, PropName};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn read(rel: &str) -> String {
    fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn tiles(name: &str) -> TileSet {
    TileSet::from_json(&read(&format!("tiles/{name}.json"))).unwrap()
}

fn tiling(name: &str) -> PeriodicTiling {
    PeriodicTiling::from_json(&read(&format!("tiles/{name}.json"))).unwrap()
}

#[test]
fn models_round_trip() {
    for entry in fs::read_dir(data("models")).unwrap() {
        let path = entry.unwrap().path();
        let m = Model::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
        let again = Model::from_json(&m.to_json()).unwrap();
        assert_eq!(again, m, "{}", path.display());
    }
}

#[test]
fn tile_files_round_trip() {
    for name in ["one_tile", "stripes", "checkerboard", "mismatched"] {
        let ts = tiles(name);
        assert_eq!(TileSet::from_json(&ts.to_json()).unwrap(), ts);
    }
    for name in ["unit", "stripes_tiling", "checkerboard_tiling"] {
        let pt = tiling(name);
        assert_eq!(PeriodicTiling::from_json(&pt.to_json()).unwrap(), pt);
    }
}

#[test]
fn shipped_tilings_validate() {
    validate_tiling(&tiles("one_tile"), &tiling("unit")).unwrap();
    validate_tiling(&tiles("stripes"), &tiling("stripes_tiling")).unwrap();
    validate_tiling(&tiles("checkerboard"), &tiling("checkerboard_tiling")).unwrap();
    let bad = validate_tiling(&tiles("mismatched"), &PeriodicTiling::uniform((1, 1), "M"));
    assert!(matches!(bad, Err(Violation::Horizontal { .. })), "{bad:?}");
    // the stripes tiles only match vertically in alternation
    let bad = validate_tiling(&tiles("stripes"), &PeriodicTiling::uniform((1, 1), "A"));
    assert!(matches!(bad, Err(Violation::Vertical { .. })), "{bad:?}");
}

#[test]
fn golden_torus_models() {
    for (ts, pt, golden) in [("one_tile", "unit", "torus_unit"), ("stripes", "stripes_tiling", "torus_stripes")] {
        let (m, _) = torus_model(&tiles(ts), &tiling(pt)).unwrap();
        let stored = Model::from_json(&read(&format!("models/{golden}.json"))).unwrap();
        assert_eq!(m, stored, "{golden}");
    }
}

#[test]
fn phi_t_holds_on_every_shipped_torus() {
    for (ts, pt) in [("one_tile", "unit"), ("stripes", "stripes_tiling"), ("checkerboard", "checkerboard_tiling")] {
        let ts = tiles(ts);
        let (m, spy) = torus_model(&ts, &tiling(pt)).unwrap();
        let phi = generate_phi(&ts);
        let at = PointedPair::new(spy, spy);
        for (name, c) in &phi.components {
            assert!(check(&m, at, c).unwrap(), "{name} fails on {pt}");
        }
        assert!(check(&m, at, &phi.formula()).unwrap());
    }
}

#[test]
fn checkerboard_torus_shape() {
    let (m, spy) = torus_model(&tiles("checkerboard"), &tiling("checkerboard_tiling")).unwrap();
    // 4 × 4 cells with a·b even, plus the spy
    assert_eq!(m.len(), 12 + 1);
    assert_eq!(m.successors(spy).len(), 12);
    let r = PropName::left("r_");
    let u = PropName::left("u");
    for a in (0..4).step_by(2) {
        for b in (0..4).step_by(2) {
            let w = m.state_index(&grid_state_name(a, b)).unwrap();
            let succ = m.successors(w);
            assert_eq!(succ.len(), 2);
            assert_eq!(succ.iter().filter(|&&v| m.holds(&r, v)).count(), 1);
            assert_eq!(succ.iter().filter(|&&v| m.holds(&u, v)).count(), 1);
        }
    }
}

#[test]
fn mismatched_tile_has_no_small_model() {
    let phi = generate_phi(&tiles("mismatched")).formula();
    assert_eq!(lhs_bounded_sat(&phi, 3).unwrap(), BoundedResult::NoModelUpToBound(3));
}
