use std::collections::{BTreeMap, BTreeSet};

use super::{Model, ModelError, StateId};
use crate::syntax::PropName;

/// Enumerations larger than this are refused unless forced.
pub const DEFAULT_ENUMERATION_CEILING: u128 = 1 << 24;

/// Number of models with `1..=max_states` states over `props` variables:
/// the sum of `2^(n²) · 2^(props·n)`. `None` on overflow.
pub fn model_count(max_states: usize, props: usize) -> Option<u128> {
    (1..=max_states).try_fold(0u128, |acc, n| {
        let bits = n.checked_mul(n)?.checked_add(props.checked_mul(n)?)?;
        if bits >= 127 {
            return None;
        }
        acc.checked_add(1u128 << bits)
    })
}

/// Every model with 1 to `max_states` states (named `w0`, `w1`, ...) whose
/// valuation mentions exactly `props`. No isomorphism reduction is done.
pub fn enumerate_models(
    max_states: usize,
    props: &BTreeSet<PropName>,
    force: bool,
) -> Result<ModelEnumerator, ModelError> {
    let count = model_count(max_states, props.len()).unwrap_or(u128::MAX);
    let hard_limit = model_count(max_states, props.len()).is_none();
    if hard_limit || (!force && count > DEFAULT_ENUMERATION_CEILING) {
        return Err(ModelError::ResourceGuard {
            count,
            ceiling: DEFAULT_ENUMERATION_CEILING,
        });
    }
    Ok(ModelEnumerator {
        props: props.iter().cloned().collect(),
        max_states,
        n: if max_states == 0 { 0 } else { 1 },
        edge_mask: 0,
        val_mask: 0,
    })
}

/// Streaming enumerator; see [`enumerate_models`].
#[derive(Clone, Debug)]
pub struct ModelEnumerator {
    props: Vec<PropName>,
    max_states: usize,
    n: usize,
    edge_mask: u128,
    val_mask: u128,
}

impl Iterator for ModelEnumerator {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.n == 0 || self.n > self.max_states {
            return None;
        }
        let n = self.n;
        let model = Model::from_masks(n, self.edge_mask, &self.props, self.val_mask);
        let val_bits = self.props.len() * n;
        self.val_mask += 1;
        if self.val_mask >> val_bits != 0 {
            self.val_mask = 0;
            self.edge_mask += 1;
            if self.edge_mask >> (n * n) != 0 {
                self.edge_mask = 0;
                self.n += 1;
            }
        }
        Some(model)
    }
}

impl Model {
    /// Decodes a model on states `w0..w{n-1}`: bit `a·n + b` of `edges` is
    /// the edge `a → b`; bit `i·n + w` of `val` puts state `w` in
    /// `V(props[i])`.
    pub fn from_masks(n: usize, edges: u128, props: &[PropName], val: u128) -> Model {
        let states = (0..n).map(|i| format!("w{i}")).collect();
        let edge_list: Vec<(StateId, StateId)> = (0..n * n)
            .filter(|bit| edges >> bit & 1 == 1)
            .map(|bit| (bit / n, bit % n))
            .collect();
        let valuation: BTreeMap<PropName, BTreeSet<StateId>> = props
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let set = (0..n).filter(|w| val >> (i * n + w) & 1 == 1).collect();
                (p.clone(), set)
            })
            .collect();
        Model::new(states, edge_list, valuation).expect("masks decode to a valid model")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_closed_form() {
        let none = BTreeSet::new();
        assert_eq!(enumerate_models(1, &none, false).unwrap().count(), 2);
        let p: BTreeSet<_> = [PropName::left("p")].into();
        assert_eq!(enumerate_models(1, &p, false).unwrap().count(), 4);
        assert_eq!(enumerate_models(2, &none, false).unwrap().count(), 18);
        assert_eq!(model_count(2, 0), Some(18));
        assert_eq!(
            enumerate_models(2, &p, false).unwrap().count() as u128,
            model_count(2, 1).unwrap()
        );
    }

    #[test]
    fn enumerated_models_are_distinct() {
        let p: BTreeSet<_> = [PropName::right("q")].into();
        let all: Vec<_> = enumerate_models(2, &p, false).unwrap().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn resource_guard() {
        let props: BTreeSet<_> = ["a", "b", "c", "d"].iter().map(|n| PropName::left(n)).collect();
        assert!(matches!(
            enumerate_models(4, &props, false),
            Err(ModelError::ResourceGuard { .. })
        ));
        assert!(enumerate_models(4, &props, true).is_ok());
        assert!(enumerate_models(12, &props, true).is_err());
    }
}
