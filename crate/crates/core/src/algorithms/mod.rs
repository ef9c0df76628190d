//! Non-strategic allocation rules, the exact welfare oracle, and randomized
//! property checkers for monotonicity and loser-independence.

mod combined;
pub(crate) mod greedy;
mod oracle;
mod partition;
mod properties;

use std::fmt;

use crate::model::{Allocation, Feasibility, Profile, Rational};

pub use combined::{ceil_sqrt, combined_ca, CombinedCa};
pub use greedy::{greedy_sca, GreedySca};
pub use oracle::{optimal_allocation, optimal_for, AtomBid, MAX_ORACLE_ITEMS};
pub use partition::{partition_max, PartitionMax};
pub use properties::{
    check_loser_independent, check_loser_independent_exhaustive, check_monotone,
    LoserIndependenceWitness, MonotonicityWitness, RandomProfiles,
};

/// How equal bids are ordered.
///
/// `Natural` orders ties by ascending agent index. `Yield(i)` is the same
/// except that agent `i` loses every tie; critical-price search uses it to
/// tell an open threshold from a closed one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieOrder {
    #[default]
    Natural,
    Yield(usize),
}

impl TieOrder {
    /// Sort key: lower keys win ties.
    #[inline]
    pub fn rank(self, agent: usize) -> (bool, usize) {
        match self {
            TieOrder::Yield(i) if i == agent => (true, agent),
            _ => (false, agent),
        }
    }
}

/// A deterministic allocation rule over single-minded declarations.
pub trait AllocationRule: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;

    fn feasibility(&self) -> Feasibility;

    /// Claimed approximation factor `c`.
    fn approximation(&self) -> Rational;

    fn allocate(&self, profile: &Profile, ties: TieOrder) -> Allocation;
}
