use crate::model::{Allocation, Bundle, Feasibility, Profile, Rational};

use super::greedy::greedy_where;
use super::{AllocationRule, TieOrder};

/// `⌈√m⌉`, the size threshold separating "small" sets.
pub fn ceil_sqrt(m: u32) -> u32 {
    let mut k = 0u32;
    while k * k < m {
        k += 1;
    }
    k
}

/// Greedy over sets of at most `⌈√m⌉` items versus the single best bid for
/// all of `M`, whichever has the higher declared welfare (ties keep the
/// greedy solution). Bids on sets strictly between the two sizes are never
/// allocated.
pub fn combined_ca(profile: &Profile, items: u32) -> Allocation {
    combined_ranked(profile, items, TieOrder::Natural)
}

pub(crate) fn combined_ranked(profile: &Profile, items: u32, ties: TieOrder) -> Allocation {
    let full = Bundle::full(items);
    let small = ceil_sqrt(items);
    let greedy = greedy_where(profile, ties, |d| d.set() != full && d.set().len() <= small);
    let greedy_welfare = greedy.declared_welfare(profile);

    let big = (0..profile.len())
        .filter(|&i| profile[i].set() == full)
        .min_by(|&x, &y| {
            profile[y]
                .amount()
                .cmp(&profile[x].amount())
                .then_with(|| ties.rank(x).cmp(&ties.rank(y)))
        });
    match big {
        Some(j) if profile[j].amount() > greedy_welfare => {
            let mut a = Allocation::empty(profile.len());
            a.assign(j, full);
            a
        }
        _ => greedy,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CombinedCa {
    pub items: u32,
}

impl AllocationRule for CombinedCa {
    fn name(&self) -> &str {
        "combined-ca"
    }

    fn feasibility(&self) -> Feasibility {
        Feasibility::Disjoint
    }

    /// Conservative `2⌈√m⌉ + 2`.
    fn approximation(&self) -> Rational {
        Rational::from_integer(2 * ceil_sqrt(self.items) as i128 + 2)
    }

    fn allocate(&self, profile: &Profile, ties: TieOrder) -> Allocation {
        combined_ranked(profile, self.items, ties)
    }
}
