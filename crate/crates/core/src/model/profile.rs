use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::{Bundle, Valuation, Value};

/// A declaration after simplification: nothing, or one bid on one set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Declaration {
    #[default]
    Empty,
    SingleMinded { set: Bundle, bid: Value },
}

impl Declaration {
    /// Canonical constructor: zero bids and empty sets become `Empty`.
    pub fn bid(set: Bundle, bid: Value) -> Self {
        if bid.is_zero() || set.is_empty() {
            Declaration::Empty
        } else {
            Declaration::SingleMinded { set, bid }
        }
    }

    pub fn set(&self) -> Bundle {
        match *self {
            Declaration::Empty => Bundle::EMPTY,
            Declaration::SingleMinded { set, .. } => set,
        }
    }

    pub fn amount(&self) -> Value {
        match *self {
            Declaration::Empty => Value::ZERO,
            Declaration::SingleMinded { bid, .. } => bid,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Declaration::Empty)
    }

    /// Declared value of an arbitrary bundle under single-minded semantics.
    pub fn value_of(&self, bundle: Bundle) -> Value {
        match *self {
            Declaration::SingleMinded { set, bid } if set.is_subset_of(bundle) => bid,
            _ => Value::ZERO,
        }
    }

    pub fn to_valuation(&self) -> Valuation {
        match *self {
            Declaration::Empty => Valuation::zero(),
            Declaration::SingleMinded { set, bid } => Valuation::single_minded(set, bid),
        }
    }

    /// Same set, different bid (canonicalised).
    pub fn with_amount(&self, bid: Value) -> Self {
        Declaration::bid(self.set(), bid)
    }
}

/// One declaration per agent; the index is the agent's identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(Vec<Declaration>);

impl Profile {
    pub fn new(decls: Vec<Declaration>) -> Self {
        Profile(decls)
    }

    pub fn empty(n: usize) -> Self {
        Profile(vec![Declaration::Empty; n])
    }

    pub fn declarations(&self) -> &[Declaration] {
        &self.0
    }

    pub fn set(&mut self, agent: usize, decl: Declaration) {
        self.0[agent] = decl;
    }

    /// Copy with one agent's declaration replaced.
    pub fn with(&self, agent: usize, decl: Declaration) -> Profile {
        let mut p = self.clone();
        p.0[agent] = decl;
        p
    }

    /// Copy with one agent masked out (`(∅, d_{-i})`).
    pub fn without(&self, agent: usize) -> Profile {
        self.with(agent, Declaration::Empty)
    }

    pub fn declared_total(&self) -> Value {
        self.0.iter().map(Declaration::amount).sum()
    }
}

impl Deref for Profile {
    type Target = [Declaration];
    fn deref(&self) -> &[Declaration] {
        &self.0
    }
}

impl From<Vec<Declaration>> for Profile {
    fn from(v: Vec<Declaration>) -> Self {
        Profile(v)
    }
}

impl FromIterator<Declaration> for Profile {
    fn from_iter<I: IntoIterator<Item = Declaration>>(iter: I) -> Self {
        Profile(iter.into_iter().collect())
    }
}
