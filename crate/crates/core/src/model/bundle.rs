use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest item count a [`Bundle`] can address.
pub const MAX_ITEMS: u32 = 32;

/// A set of items, stored as a bitmask over item indices `0..m`.
///
/// Bundles are totally ordered with smaller sets first: by popcount, then
/// by raw mask. This is the order used wherever ties are broken in favour
/// of smaller sets.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bundle(u32);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub const fn from_mask(mask: u32) -> Self {
        Bundle(mask)
    }

    /// All `m` items.
    pub fn full(m: u32) -> Self {
        debug_assert!(m <= MAX_ITEMS);
        if m >= 32 {
            Bundle(u32::MAX)
        } else {
            Bundle((1u32 << m) - 1)
        }
    }

    pub fn from_items<I: IntoIterator<Item = u32>>(items: I) -> Self {
        Bundle(items.into_iter().fold(0, |acc, i| {
            debug_assert!(i < MAX_ITEMS);
            acc | (1 << i)
        }))
    }

    pub fn singleton(item: u32) -> Self {
        Bundle(1 << item)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, item: u32) -> bool {
        item < MAX_ITEMS && self.0 & (1 << item) != 0
    }

    pub const fn is_subset_of(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Bundle) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn union(self, other: Bundle) -> Bundle {
        Bundle(self.0 | other.0)
    }

    pub const fn intersection(self, other: Bundle) -> Bundle {
        Bundle(self.0 & other.0)
    }

    pub const fn difference(self, other: Bundle) -> Bundle {
        Bundle(self.0 & !other.0)
    }

    /// True when every set bit is below `m`.
    pub fn fits(self, m: u32) -> bool {
        self.is_subset_of(Bundle::full(m))
    }

    pub fn items(self) -> impl Iterator<Item = u32> {
        let mask = self.0;
        (0..MAX_ITEMS).filter(move |i| mask & (1 << i) != 0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Bundle> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(Bundle(cur))
        })
    }
}

impl Ord for Bundle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Bundle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.items().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}
