//! LHS, a two-dimensional modal logic of hiding and seeking, and its I-free
//! fragment.
//!
//! Formulas are evaluated at a pair of states of a single Kripke frame: white
//! modalities move the first (Hider) coordinate, black modalities the second
//! (Seeker) coordinate, and the constant `I` holds when both coincide.
//!
//! * [`syntax`]: formulas, parser and printer, sublanguages, substitution.
//! * [`model`]: finite models, the JSON model format, model constructions.
//! * [`semantics`]: model checking and the first-order translation.
//! * [`bisim`]: bisimulations between pointed pair models.
//! * [`normal`]: propositional CNF, clean formulas and clean CNF companions.
//! * [`decide`]: K tableau, the decision procedure for the I-free fragment,
//!   and bounded search for the full language.
//! * [`proof`]: checker for Hilbert-style derivations.
//! * [`tiling`]: the tiling construction used for undecidability.

pub mod bisim;
pub mod decide;
pub mod exec;
pub mod model;
pub mod normal;
pub mod proof;
pub mod random;
pub mod semantics;
pub mod syntax;
pub mod tiling;

pub use exec::Exec;
pub use model::{Model, PointedPair};
pub use syntax::{parse, render, Formula, PropName, Side};
