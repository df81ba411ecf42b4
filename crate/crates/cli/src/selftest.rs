//! `lhs selftest`: quick seeded cross-checks between independent parts of
//! the library.

use std::collections::HashMap;

use lhs_core::decide::{brute_force_sat_oracle, lhs_minus_sat_with, Status};
use lhs_core::model::PointedPair;
use lhs_core::normal::companion;
use lhs_core::random::{random_formula, random_model, rng, FormulaConfig};
use lhs_core::semantics::{check, fo_eval, fo_translate};
use lhs_core::{Exec, Formula, Model};

fn pairs(m: &Model) -> impl Iterator<Item = PointedPair> + '_ {
    (0..m.len()).flat_map(move |s| (0..m.len()).map(move |t| PointedPair::new(s, t)))
}

fn report(name: &str, agree: usize, total: usize, failures: &[String]) -> bool {
    println!("{name}: {agree}/{total} agree");
    for f in failures.iter().take(5) {
        println!("  disagreement: {f}");
    }
    agree == total
}

/// Returns the exit code: 0 when every check agrees.
pub fn run(seed: u64, count: usize, exec: Exec) -> u8 {
    let mut r = rng(seed);
    let small = FormulaConfig {
        size: 8,
        ..Default::default()
    };
    let mut ok = true;

    // Decision procedure vs brute-force oracle (bound 3, one-directional:
    // the oracle may miss models larger than its bound).
    let mut failures = Vec::new();
    for _ in 0..count {
        let phi = random_formula(&mut r, &small);
        let verdict = lhs_minus_sat_with(&phi, exec).map(|v| v.status);
        let oracle = brute_force_sat_oracle(&phi, 3).map(|b| b.is_sat());
        match (verdict, oracle) {
            (Ok(Status::Unsat), Ok(true)) => failures.push(format!("{phi}: UNSAT but the oracle has a model")),
            (Ok(_), Ok(_)) => {}
            (Err(e), _) => failures.push(format!("{phi}: {e}")),
            (_, Err(e)) => failures.push(format!("{phi}: oracle: {e}")),
        }
    }
    ok &= report("sat vs oracle", count - failures.len(), count, &failures);

    // Companion equivalence on random small models.
    let mut failures = Vec::new();
    for _ in 0..count {
        let phi = random_formula(&mut r, &small);
        let c = match companion(&phi) {
            Ok(c) => c.to_formula(),
            Err(e) => {
                failures.push(format!("{phi}: {e}"));
                continue;
            }
        };
        let props: Vec<_> = phi.vars().into_iter().collect();
        let m = random_model(&mut r, 3, &props, 0.4);
        let bad = pairs(&m).find(|&at| check(&m, at, &phi).ok() != check(&m, at, &c).ok());
        if let Some(at) = bad {
            failures.push(format!("{phi} at ({}, {})", at.s, at.t));
        }
    }
    ok &= report("companion equivalence", count - failures.len(), count, &failures);

    // Standard translation vs direct model checking, with I.
    let with_eq = FormulaConfig {
        allow_eq: true,
        modal_depth: 3,
        ..small
    };
    let mut failures = Vec::new();
    for _ in 0..count {
        let phi: Formula = random_formula(&mut r, &with_eq);
        let props: Vec<_> = phi.vars().into_iter().collect();
        let m = random_model(&mut r, 4, &props, 0.4);
        let alpha = fo_translate(&phi, "x", "y");
        let bad = pairs(&m).find(|&at| {
            let env = HashMap::from([("x".to_string(), at.s), ("y".to_string(), at.t)]);
            check(&m, at, &phi).ok() != fo_eval(&m, &alpha, &env).ok()
        });
        if let Some(at) = bad {
            failures.push(format!("{phi} at ({}, {})", at.s, at.t));
        }
    }
    ok &= report("standard translation", count - failures.len(), count, &failures);

    if ok {
        0
    } else {
        1
    }
}
