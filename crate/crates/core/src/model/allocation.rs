use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::{Bundle, Profile, Valuation, Value};
use crate::error::{Error, Result};

/// Which allocations are admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    /// Pairwise disjoint bundles.
    Disjoint,
    /// Pairwise disjoint bundles of at most `s` items each.
    Capped(u32),
    /// Capped, and every allocated item lies in `a` or every one lies in `b`.
    OneSide { a: Bundle, b: Bundle, cap: u32 },
}

impl Feasibility {
    pub fn cap(self) -> Option<u32> {
        match self {
            Feasibility::Disjoint => None,
            Feasibility::Capped(s) | Feasibility::OneSide { cap: s, .. } => Some(s),
        }
    }

    pub fn admits(self, allocation: &Allocation) -> bool {
        if !feasible(allocation, self.cap()) {
            return false;
        }
        match self {
            Feasibility::OneSide { a, b, .. } => {
                let used = allocation.allocated_items();
                used.is_subset_of(a) || used.is_subset_of(b)
            }
            _ => true,
        }
    }
}

/// One bundle per agent, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<Bundle>);

impl Allocation {
    pub fn empty(n: usize) -> Self {
        Allocation(vec![Bundle::EMPTY; n])
    }

    pub fn new(bundles: Vec<Bundle>) -> Self {
        Allocation(bundles)
    }

    pub fn assign(&mut self, agent: usize, bundle: Bundle) {
        self.0[agent] = bundle;
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.0
    }

    pub fn winners(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(i, _)| i)
    }

    pub fn allocated_items(&self) -> Bundle {
        self.0.iter().fold(Bundle::EMPTY, |acc, b| acc.union(*b))
    }

    /// Declared welfare: sum of each agent's declared value for its bundle.
    pub fn declared_welfare(&self, profile: &Profile) -> Value {
        self.0
            .iter()
            .zip(profile.iter())
            .map(|(b, d)| d.value_of(*b))
            .sum()
    }
}

impl Deref for Allocation {
    type Target = [Bundle];
    fn deref(&self) -> &[Bundle] {
        &self.0
    }
}

/// Pairwise disjointness plus the optional cardinality cap.
pub fn feasible(allocation: &Allocation, cap: Option<u32>) -> bool {
    let mut used = Bundle::EMPTY;
    for b in allocation.iter() {
        if b.intersects(used) {
            return false;
        }
        if let Some(s) = cap {
            if b.len() > s {
                return false;
            }
        }
        used = used.union(*b);
    }
    true
}

/// `Σ_i t_i(X_i)` for a feasible allocation.
pub fn social_welfare(allocation: &Allocation, types: &[Valuation]) -> Result<Value> {
    if allocation.len() != types.len() {
        return Err(Error::Infeasible(format!(
            "{} bundles for {} agents",
            allocation.len(),
            types.len()
        )));
    }
    if !feasible(allocation, None) {
        return Err(Error::Infeasible(format!(
            "overlapping bundles {:?}",
            allocation.bundles()
        )));
    }
    Ok(true_welfare(allocation, types))
}

/// Welfare without the feasibility check; for allocations produced by a rule.
pub(crate) fn true_welfare(allocation: &Allocation, types: &[Valuation]) -> Value {
    allocation
        .iter()
        .zip(types)
        .map(|(b, t)| t.value_of(*b))
        .sum()
}

/// Allocation plus per-agent payments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Outcome {
    pub allocation: Allocation,
    pub payments: Vec<Value>,
}

impl Outcome {
    pub fn empty(n: usize) -> Self {
        Outcome {
            allocation: Allocation::empty(n),
            payments: vec![Value::ZERO; n],
        }
    }

    /// Quasi-linear utility `t_i(A_i) − P_i`; may be negative for overbidders.
    pub fn utility(&self, agent: usize, valuation: &Valuation) -> i128 {
        valuation.value_of(self.allocation[agent]).ticks() as i128
            - self.payments[agent].ticks() as i128
    }
}
