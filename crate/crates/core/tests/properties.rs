use proptest::prelude::*;

use lhs_core::bisim::{check_bisimulation_witness, largest_bisimulation_with, relation_from_map};
use lhs_core::decide::{
    brute_force_sat_oracle, k_sat, k_valid, lhs_minus_sat_with, lhs_minus_valid, KValidity, KVerdict, Status,
};
use lhs_core::normal::{
    clean_decompose, clean_to_cnf, companion_bounded, companion_with, is_clean_cnf_shape, is_cnf, prop_cnf, CompanionStyle, NormalError,
};
use lhs_core::random::{random_clean, random_formula, random_model, random_one_sided, rng, FormulaConfig};
use lhs_core::semantics::{check, check_all, check_all_with, one_sided_eval};
use lhs_core::syntax::render_full;
use lhs_core::{parse, render, Exec, Formula, Model, PointedPair, Side};

fn cfg(size: usize, depth: usize, eq: bool) -> FormulaConfig {
    FormulaConfig {
        size,
        modal_depth: depth,
        allow_eq: eq,
        ..Default::default()
    }
}

fn pairs(m: &Model) -> impl Iterator<Item = PointedPair> + '_ {
    (0..m.len()).flat_map(move |s| (0..m.len()).map(move |t| PointedPair::new(s, t)))
}

fn equivalent_on(m: &Model, a: &Formula, b: &Formula) -> bool {
    pairs(m).all(|at| check(m, at, a).unwrap() == check(m, at, b).unwrap())
}

fn props_of(phi: &Formula) -> Vec<lhs_core::PropName> {
    let mut v: Vec<_> = FormulaConfig::default().variables();
    v.extend(phi.vars());
    v.sort();
    v.dedup();
    v
}

/// Longest path from `root`, or `None` when a cycle is reachable.
fn height(m: &Model, root: usize) -> Option<usize> {
    fn go(m: &Model, w: usize, seen: &mut Vec<bool>) -> Option<usize> {
        if seen[w] {
            return None;
        }
        seen[w] = true;
        let mut h = 0;
        for &v in m.successors(w) {
            h = h.max(go(m, v, seen)? + 1);
        }
        seen[w] = false;
        Some(h)
    }
    go(m, root, &mut vec![false; m.len()])
}

fn modal_count(phi: &Formula) -> usize {
    let text = render(phi);
    ["[W]", "<W>", "[B]", "<B>"].iter().map(|op| text.matches(op).count()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(16, 3, true));
        prop_assert_eq!(parse(&render(&phi)).unwrap(), phi.clone());
        prop_assert_eq!(parse(&render_full(&phi)).unwrap(), phi);
    }

    #[test]
    fn check_all_matches_pointwise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(12, 3, true));
        let m = random_model(&mut r, 4, &props_of(&phi), 0.4);
        let all = check_all(&m, &phi);
        for at in pairs(&m) {
            prop_assert_eq!(all.contains(&at), check(&m, at, &phi).unwrap());
        }
        prop_assert_eq!(check_all_with(&m, &phi, Exec::Sequential), all);
    }

    #[test]
    fn diamonds_are_dual_boxes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(8, 2, true));
        let m = random_model(&mut r, 4, &props_of(&phi), 0.4);
        let neg = |f: Formula| Formula::not(f);
        prop_assert!(equivalent_on(&m, &Formula::wdia(phi.clone()), &neg(Formula::wbox(neg(phi.clone())))));
        prop_assert!(equivalent_on(&m, &Formula::bdia(phi.clone()), &neg(Formula::bbox(neg(phi)))));
    }

    #[test]
    fn propositional_cnf(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alpha = random_formula(&mut r, &cfg(10, 0, false));
        let h = prop_cnf(&alpha).unwrap();
        prop_assert!(is_cnf(&h), "{} -> {}", alpha, h);
        let m = random_model(&mut r, 3, &props_of(&alpha), 0.4);
        prop_assert!(equivalent_on(&m, &alpha, &h));
    }

    #[test]
    fn clean_formulas_decompose_and_normalize(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_clean(&mut r, &cfg(6, 2, false), 4);
        let d = clean_decompose(&phi).unwrap();
        prop_assert_eq!(d.reassemble(), phi.clone());
        let c = clean_to_cnf(&phi).unwrap();
        prop_assert!(c.is_well_formed());
        prop_assert!(is_clean_cnf_shape(&c.to_formula()));
        let m = random_model(&mut r, 3, &props_of(&phi), 0.4);
        prop_assert!(equivalent_on(&m, &phi, &c.to_formula()));
    }

    #[test]
    fn companions_are_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(8, 2, false));
        let m = random_model(&mut r, 3, &props_of(&phi), 0.4);
        let compact = companion_with(&phi, CompanionStyle::Compact).unwrap();
        prop_assert!(compact.is_well_formed());
        prop_assert!(equivalent_on(&m, &phi, &compact.to_formula()));
    }

    #[test]
    fn k_validity_against_small_models(seed in any::<u64>()) {
        let mut r = rng(seed);
        let side = if seed % 2 == 0 { Side::Left } else { Side::Right };
        let psi = random_one_sided(&mut r, &cfg(8, 2, false), side);
        match k_valid(&psi).unwrap() {
            KValidity::Valid => {
                let none = brute_force_sat_oracle(&Formula::not(psi.clone()), 3).unwrap();
                prop_assert!(!none.is_sat(), "{} has a small countermodel", psi);
            }
            KValidity::Invalid(w) => {
                prop_assert!(!one_sided_eval(&w.model, w.state, &psi).unwrap());
            }
        }
    }

    #[test]
    fn lhs_minus_verdicts_carry_checked_witnesses(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(8, 2, false));
        let v = lhs_minus_valid(&phi).unwrap();
        match v.status {
            Status::Invalid => {
                let w = v.witness.unwrap();
                prop_assert!(!check(&w.model, w.at, &phi).unwrap());
            }
            Status::Valid => {
                let m = random_model(&mut r, 3, &props_of(&phi), 0.4);
                prop_assert!(pairs(&m).all(|at| check(&m, at, &phi).unwrap()));
            }
            s => prop_assert!(false, "unexpected {:?}", s),
        }
    }

    #[test]
    fn sequential_and_parallel_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &cfg(8, 2, false));
        let a = lhs_minus_sat_with(&phi, Exec::Sequential).unwrap();
        let b = lhs_minus_sat_with(&phi, Exec::Parallel).unwrap();
        prop_assert_eq!(a.status, b.status);
        let vars = FormulaConfig::default().variables();
        let m = random_model(&mut r, 3, &vars, 0.4);
        let n = random_model(&mut r, 3, &vars, 0.4);
        let zs = largest_bisimulation_with(&m, &n, Exec::Sequential).unwrap();
        let zp = largest_bisimulation_with(&m, &n, Exec::Parallel).unwrap();
        prop_assert_eq!(zs.pairs, zp.pairs);
    }

    #[test]
    fn isomorphic_copies_are_bisimilar(seed in any::<u64>(), rot in 0usize..4) {
        let mut r = rng(seed);
        let vars = FormulaConfig::default().variables();
        let m = random_model(&mut r, 4, &vars, 0.4);
        let perm: Vec<usize> = (0..m.len()).map(|w| (w + rot) % m.len()).collect();
        let n = m.permuted(&perm);
        prop_assert!(check_bisimulation_witness(&relation_from_map(&m, &n, &perm)).is_ok());
        let z = largest_bisimulation_with(&m, &n, Exec::default()).unwrap();
        prop_assert!(check_bisimulation_witness(&z).is_ok());
        for at in pairs(&m) {
            prop_assert!(z.contains(at, PointedPair::new(perm[at.s], perm[at.t])));
        }
    }

    #[test]
    fn one_sided_formulas_ignore_the_other_side(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_one_sided(&mut r, &cfg(10, 3, false), Side::Left);
        let m = random_model(&mut r, 4, &props_of(&psi), 0.4);
        for at in pairs(&m) {
            prop_assert_eq!(check(&m, at, &psi).unwrap(), one_sided_eval(&m, at.s, &psi).unwrap());
        }
    }

    #[test]
    fn k_witnesses_are_small_trees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let side = if seed % 2 == 0 { Side::Left } else { Side::Right };
        let psi = random_one_sided(&mut r, &cfg(12, 3, false), side);
        if let KVerdict::Sat(w) = k_sat(&psi).unwrap() {
            prop_assert!(one_sided_eval(&w.model, w.state, &psi).unwrap());
            let h = height(&w.model, w.state);
            prop_assert!(h.is_some_and(|h| h <= psi.modal_depth()), "{} height {:?}", psi, h);
            let bound = (modal_count(&psi) + 1).pow(psi.modal_depth() as u32);
            prop_assert!(w.model.len() <= bound, "{}: {} states", psi, w.model.len());
        }
    }
}

// The literal recursion grows fast and nests deeply, so it runs on its own
// thread with a large stack, on small formulas only. It may stop at the size
// guard; whenever it finishes it must agree with the input.
#[test]
fn strict_companions_are_equivalent() {
    std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(|| {
            let mut r = rng(17);
            let mut finished = 0;
            for _ in 0..150 {
                let phi = random_formula(&mut r, &cfg(5, 2, false));
                let m = random_model(&mut r, 3, &props_of(&phi), 0.4);
                match companion_bounded(&phi, CompanionStyle::Strict, 2_000) {
                    Ok(c) => {
                        assert!(equivalent_on(&m, &phi, &c.to_formula()), "{phi}");
                        finished += 1;
                    }
                    Err(NormalError::TooLarge { .. }) => {}
                    Err(e) => panic!("{phi}: {e}"),
                }
            }
            assert!(finished >= 60, "only {finished} strict conversions finished");
        })
        .unwrap()
        .join()
        .unwrap();
}
