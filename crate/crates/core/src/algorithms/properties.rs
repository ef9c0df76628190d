use std::collections::HashMap;

use rand::seq::index::sample;
use rand::Rng;

use crate::model::{Allocation, Bundle, Declaration, Profile, Value};
use crate::rng::{seeded, SimRng};

use super::{AllocationRule, TieOrder};

/// Uniform random single-minded profiles over a small grid.
#[derive(Clone, Copy, Debug)]
pub struct RandomProfiles {
    pub agents: usize,
    pub items: u32,
    pub max_value: u64,
    /// Largest set size drawn.
    pub max_set: u32,
}

impl RandomProfiles {
    pub fn declaration(&self, rng: &mut SimRng) -> Declaration {
        if rng.gen_ratio(1, 5) {
            return Declaration::Empty;
        }
        let size = rng.gen_range(1..=self.max_set.clamp(1, self.items));
        let set = Bundle::from_items(
            sample(rng, self.items as usize, size as usize)
                .into_iter()
                .map(|i| i as u32),
        );
        Declaration::bid(set, Value(rng.gen_range(1..=self.max_value)))
    }

    pub fn sample(&self, rng: &mut SimRng) -> Profile {
        (0..self.agents).map(|_| self.declaration(rng)).collect()
    }
}

/// Agent `agent` wins `set` at `bid` but loses `subset` at `subset_bid ≥ bid`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub profile: Profile,
    pub agent: usize,
    pub set: Bundle,
    pub bid: Value,
    pub subset: Bundle,
    pub subset_bid: Value,
}

/// Randomized search for a monotonicity violation.
pub fn check_monotone<R: AllocationRule + ?Sized>(
    rule: &R,
    profiles: &RandomProfiles,
    trials: usize,
    seed: u64,
) -> Option<MonotonicityWitness> {
    let mut rng = seeded(seed);
    for _ in 0..trials {
        let profile = profiles.sample(&mut rng);
        let alloc = rule.allocate(&profile, TieOrder::Natural);
        let winners: Vec<usize> = alloc.winners().collect();
        if winners.is_empty() {
            continue;
        }
        let agent = winners[rng.gen_range(0..winners.len())];
        let set = alloc[agent];
        let bid = profile[agent].amount();
        let subset = loop {
            let s = Bundle::from_mask(rng.gen::<u32>() & set.mask());
            if !s.is_empty() {
                break s;
            }
        };
        let subset_bid = Value(rng.gen_range(bid.ticks()..=2 * bid.ticks() + 2));
        let probe = profile.with(agent, Declaration::bid(subset, subset_bid));
        if rule.allocate(&probe, TieOrder::Natural)[agent] != subset {
            return Some(MonotonicityWitness {
                profile,
                agent,
                set,
                bid,
                subset,
                subset_bid,
            });
        }
    }
    None
}

/// Two opponent profiles that look identical to `agent` through the rule run
/// without it, yet give it different bundles for the same declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoserIndependenceWitness {
    pub agent: usize,
    pub declaration: Declaration,
    pub others: Profile,
    pub others_alt: Profile,
    pub won: Bundle,
    pub won_alt: Bundle,
}

/// Winners of `A(∅, d_{-i})` with their declared values for their winnings.
fn signature(alloc: &Allocation, profile: &Profile) -> Vec<(Bundle, Value)> {
    alloc
        .iter()
        .zip(profile.iter())
        .map(|(b, d)| (*b, d.value_of(*b)))
        .collect()
}

/// Randomized search: keep the winners of `A(∅, d_{-i})`, resample the
/// losers, and compare agent `i`'s bundle under a random declaration.
pub fn check_loser_independent<R: AllocationRule + ?Sized>(
    rule: &R,
    profiles: &RandomProfiles,
    trials: usize,
    seed: u64,
) -> Option<LoserIndependenceWitness> {
    let mut rng = seeded(seed);
    for _ in 0..trials {
        let agent = rng.gen_range(0..profiles.agents);
        let others = profiles.sample(&mut rng).without(agent);
        let base = rule.allocate(&others, TieOrder::Natural);
        let mut others_alt = others.clone();
        for j in 0..profiles.agents {
            if j != agent && base[j].is_empty() {
                others_alt.set(j, profiles.declaration(&mut rng));
            }
        }
        let alt = rule.allocate(&others_alt, TieOrder::Natural);
        if signature(&base, &others) != signature(&alt, &others_alt) {
            continue;
        }
        let declaration = profiles.declaration(&mut rng);
        let won = rule.allocate(&others.with(agent, declaration), TieOrder::Natural)[agent];
        let won_alt =
            rule.allocate(&others_alt.with(agent, declaration), TieOrder::Natural)[agent];
        if won != won_alt {
            return Some(LoserIndependenceWitness {
                agent,
                declaration,
                others,
                others_alt,
                won,
                won_alt,
            });
        }
    }
    None
}

/// Exhaustive loser-independence check over every profile of `agents`
/// agents, sets in `items` items and bids in `1..=max_value`.
pub fn check_loser_independent_exhaustive<R: AllocationRule + ?Sized>(
    rule: &R,
    agents: usize,
    items: u32,
    max_value: u64,
) -> Option<LoserIndependenceWitness> {
    let mut options = vec![Declaration::Empty];
    for mask in 1..(1u32 << items) {
        for v in 1..=max_value {
            options.push(Declaration::bid(Bundle::from_mask(mask), Value(v)));
        }
    }
    for agent in 0..agents {
        let mut seen: HashMap<Vec<(Bundle, Value)>, (Profile, Vec<Bundle>)> = HashMap::new();
        let mut idx = vec![0usize; agents];
        loop {
            let others: Profile = (0..agents)
                .map(|j| if j == agent { Declaration::Empty } else { options[idx[j]] })
                .collect();
            let sig = signature(&rule.allocate(&others, TieOrder::Natural), &others);
            let won: Vec<Bundle> = options
                .iter()
                .map(|&d| rule.allocate(&others.with(agent, d), TieOrder::Natural)[agent])
                .collect();
            match seen.get(&sig) {
                Some((prev, prev_won)) => {
                    if let Some(k) = (0..options.len()).find(|&k| prev_won[k] != won[k]) {
                        return Some(LoserIndependenceWitness {
                            agent,
                            declaration: options[k],
                            others: prev.clone(),
                            others_alt: others,
                            won: prev_won[k],
                            won_alt: won[k],
                        });
                    }
                }
                None => {
                    seen.insert(sig, (others, won));
                }
            }
            // odometer over the other agents' options
            let mut k = 0;
            loop {
                if k == agents {
                    break;
                }
                if k == agent {
                    k += 1;
                    continue;
                }
                idx[k] += 1;
                if idx[k] < options.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == agents {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{GreedySca, PartitionMax};
    use crate::model::{Feasibility, Rational};

    #[derive(Debug)]
    struct EvenTicksOnly;

    impl AllocationRule for EvenTicksOnly {
        fn name(&self) -> &str {
            "even-ticks"
        }
        fn feasibility(&self) -> Feasibility {
            Feasibility::Disjoint
        }
        fn approximation(&self) -> Rational {
            Rational::from_integer(1)
        }
        fn allocate(&self, profile: &Profile, ties: TieOrder) -> Allocation {
            let even: Profile = profile
                .iter()
                .map(|d| if d.amount().ticks() % 2 == 0 { *d } else { Declaration::Empty })
                .collect();
            GreedySca { cap: 32 }.allocate(&even, ties)
        }
    }

    fn grid() -> RandomProfiles {
        RandomProfiles {
            agents: 4,
            items: 4,
            max_value: 8,
            max_set: 2,
        }
    }

    #[test]
    fn greedy_is_monotone() {
        assert_eq!(check_monotone(&GreedySca { cap: 2 }, &grid(), 10_000, 1), None);
    }

    #[test]
    fn broken_rule_has_monotonicity_witness() {
        let w = check_monotone(&EvenTicksOnly, &grid(), 10_000, 1).expect("witness");
        assert!(w.subset_bid >= w.bid);
        assert!(w.subset.is_subset_of(w.set));
    }

    #[test]
    fn zero_trials_find_nothing() {
        assert_eq!(check_monotone(&EvenTicksOnly, &grid(), 0, 1), None);
        assert_eq!(check_loser_independent(&EvenTicksOnly, &grid(), 0, 1), None);
    }

    #[test]
    fn greedy_is_loser_independent() {
        assert_eq!(
            check_loser_independent(&GreedySca { cap: 2 }, &grid(), 10_000, 2),
            None
        );
    }

    #[test]
    fn partition_max_is_not_loser_independent() {
        let rule = PartitionMax::new(
            Bundle::from_items([0, 1]),
            Bundle::from_items([2, 3]),
            2,
        )
        .unwrap();
        let w = check_loser_independent(&rule, &grid(), 10_000, 3).expect("witness");
        assert_ne!(w.won, w.won_alt);
    }

    #[test]
    fn exhaustive_tiny_grid() {
        assert_eq!(
            check_loser_independent_exhaustive(&GreedySca { cap: 3 }, 3, 2, 3),
            None
        );
        let rule = PartitionMax::new(
            Bundle::from_items([0, 1]),
            Bundle::from_items([2, 3]),
            2,
        )
        .unwrap();
        assert!(check_loser_independent_exhaustive(&rule, 3, 4, 3).is_some());
    }
}
