use crate::error::{Error, Result};
use crate::model::{Allocation, Bundle, Feasibility, Profile, Rational};

use super::greedy::greedy_where;
use super::{AllocationRule, TieOrder};

/// Best of two greedy runs, one confined to `A` and one to `B`, where the
/// rule may allocate items of only one side. Monotone but not
/// loser-independent.
pub fn partition_max(profile: &Profile, parts: (Bundle, Bundle), cap: u32) -> Result<Allocation> {
    let rule = PartitionMax::new(parts.0, parts.1, cap)?;
    Ok(rule.allocate(profile, TieOrder::Natural))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionMax {
    a: Bundle,
    b: Bundle,
    cap: u32,
}

impl PartitionMax {
    /// `a` and `b` must be disjoint; together they form the item set.
    pub fn new(a: Bundle, b: Bundle, cap: u32) -> Result<Self> {
        let items = a.union(b).len();
        if a.intersects(b) || a.union(b) != Bundle::full(items) {
            return Err(Error::InvalidPartition { a, b, items });
        }
        Ok(PartitionMax { a, b, cap })
    }

    /// Partition for exactly `m` items.
    pub fn for_items(a: Bundle, b: Bundle, m: u32, cap: u32) -> Result<Self> {
        if a.intersects(b) || a.union(b) != Bundle::full(m) {
            return Err(Error::InvalidPartition { a, b, items: m });
        }
        Ok(PartitionMax { a, b, cap })
    }

    pub fn parts(&self) -> (Bundle, Bundle) {
        (self.a, self.b)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }
}

impl AllocationRule for PartitionMax {
    fn name(&self) -> &str {
        "partition-max"
    }

    fn feasibility(&self) -> Feasibility {
        Feasibility::OneSide {
            a: self.a,
            b: self.b,
            cap: self.cap,
        }
    }

    fn approximation(&self) -> Rational {
        Rational::from_integer(self.cap as i128 + 1)
    }

    fn allocate(&self, profile: &Profile, ties: TieOrder) -> Allocation {
        let cap = self.cap;
        let side = |part: Bundle| {
            greedy_where(profile, ties, move |d| {
                d.set().len() <= cap && d.set().is_subset_of(part)
            })
        };
        let left = side(self.a);
        let right = side(self.b);
        if right.declared_welfare(profile) > left.declared_welfare(profile) {
            right
        } else {
            left
        }
    }
}
