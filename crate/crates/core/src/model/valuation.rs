use serde::{Deserialize, Serialize};

use super::{Bundle, Value};

/// An explicitly listed valuation: the value of a bundle is the largest atom
/// value over atoms contained in it, and zero if none is.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    atoms: Vec<(Bundle, Value)>,
}

impl Valuation {
    /// Builds a valuation, dropping zero-value atoms and merging duplicate
    /// bundles by keeping the larger value. Atoms are kept in bundle order.
    pub fn new(atoms: impl IntoIterator<Item = (Bundle, Value)>) -> Self {
        let mut merged: Vec<(Bundle, Value)> = Vec::new();
        for (b, v) in atoms {
            if v.is_zero() || b.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| *x == b) {
                Some(slot) => slot.1 = slot.1.max(v),
                None => merged.push((b, v)),
            }
        }
        merged.sort_by_key(|a| a.0);
        Valuation { atoms: merged }
    }

    pub fn single_minded(set: Bundle, value: Value) -> Self {
        Valuation::new([(set, value)])
    }

    pub fn zero() -> Self {
        Valuation::default()
    }

    pub fn atoms(&self) -> &[(Bundle, Value)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn value_of(&self, bundle: Bundle) -> Value {
        self.atoms
            .iter()
            .filter(|(s, _)| s.is_subset_of(bundle))
            .map(|&(_, v)| v)
            .max()
            .unwrap_or(Value::ZERO)
    }

    /// Largest atom value; the scale used to normalise learner feedback.
    pub fn max_value(&self) -> Value {
        self.atoms
            .iter()
            .map(|&(_, v)| v)
            .max()
            .unwrap_or(Value::ZERO)
    }

    pub fn support(&self) -> Bundle {
        self.atoms
            .iter()
            .fold(Bundle::EMPTY, |acc, &(b, _)| acc.union(b))
    }
}
