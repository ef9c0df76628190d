use crate::model::{Allocation, Bundle, Declaration, Feasibility, Profile, Rational};

use super::{AllocationRule, TieOrder};

/// Greedy by declared value: descending bid, ties by [`TieOrder`]; a bid is
/// accepted iff its set misses everything accepted before it.
pub(crate) fn greedy_where(
    profile: &Profile,
    ties: TieOrder,
    eligible: impl Fn(&Declaration) -> bool,
) -> Allocation {
    let mut order: Vec<usize> = (0..profile.len())
        .filter(|&i| !profile[i].is_empty() && eligible(&profile[i]))
        .collect();
    order.sort_unstable_by(|&x, &y| {
        profile[y]
            .amount()
            .cmp(&profile[x].amount())
            .then_with(|| ties.rank(x).cmp(&ties.rank(y)))
    });
    let mut alloc = Allocation::empty(profile.len());
    let mut used = Bundle::EMPTY;
    for i in order {
        let set = profile[i].set();
        if !set.intersects(used) {
            used = used.union(set);
            alloc.assign(i, set);
        }
    }
    alloc
}

/// Greedy for the `s`-CA: bids on more than `s` items are ignored.
pub fn greedy_sca(profile: &Profile, cap: u32) -> Allocation {
    greedy_ranked(profile, cap, TieOrder::Natural)
}

pub(crate) fn greedy_ranked(profile: &Profile, cap: u32, ties: TieOrder) -> Allocation {
    greedy_where(profile, ties, |d| d.set().len() <= cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedySca {
    pub cap: u32,
}

impl AllocationRule for GreedySca {
    fn name(&self) -> &str {
        "greedy-sca"
    }

    fn feasibility(&self) -> Feasibility {
        Feasibility::Capped(self.cap)
    }

    fn approximation(&self) -> Rational {
        Rational::from_integer(self.cap as i128 + 1)
    }

    fn allocate(&self, profile: &Profile, ties: TieOrder) -> Allocation {
        greedy_ranked(profile, self.cap, ties)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{feasible, Value};

    fn b(items: &[u32]) -> Bundle {
        Bundle::from_items(items.iter().copied())
    }

    fn bid(items: &[u32], v: u64) -> Declaration {
        Declaration::bid(b(items), Value(v))
    }

    #[test]
    fn appendix_cycle_start_state() {
        // a,b,c,d = 0,1,2,3
        let p = Profile::new(vec![
            bid(&[3], 6),
            bid(&[1, 2], 5),
            bid(&[2], 4),
            bid(&[3], 5),
        ]);
        let a = greedy_sca(&p, 2);
        assert_eq!(
            a.bundles(),
            &[b(&[3]), b(&[1, 2]), Bundle::EMPTY, Bundle::EMPTY]
        );
    }

    #[test]
    fn all_empty_gives_empty_allocation() {
        let a = greedy_sca(&Profile::empty(3), 2);
        assert_eq!(a, Allocation::empty(3));
    }

    #[test]
    fn lone_bidder_wins() {
        let a = greedy_sca(&Profile::new(vec![bid(&[0], 1)]), 1);
        assert_eq!(a.bundles(), &[b(&[0])]);
    }

    #[test]
    fn oversized_bids_are_ignored() {
        let p = Profile::new(vec![bid(&[0, 1, 2], 9), bid(&[0], 1)]);
        let a = greedy_sca(&p, 2);
        assert_eq!(a.bundles(), &[Bundle::EMPTY, b(&[0])]);
        assert!(feasible(&a, Some(2)));
    }

    #[test]
    fn ties_go_to_lower_index_unless_yielding() {
        let p = Profile::new(vec![bid(&[0], 3), bid(&[0], 3)]);
        assert_eq!(greedy_ranked(&p, 1, TieOrder::Natural)[0], b(&[0]));
        assert_eq!(greedy_ranked(&p, 1, TieOrder::Yield(0))[1], b(&[0]));
    }
}
