use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Allocation, Bundle, Feasibility, Valuation, Value};

/// Largest item index range the exact oracle accepts.
pub const MAX_ORACLE_ITEMS: u32 = 24;

/// Largest agent count the exact oracle accepts.
const MAX_ORACLE_AGENTS: usize = 64;

/// One listed `(agent, set, value)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtomBid {
    pub agent: usize,
    pub set: Bundle,
    pub value: Value,
}

/// Exact maximum-welfare allocation in which each agent receives at most one
/// of its listed sets (or nothing), with optional cardinality cap.
///
/// Memoized search over `(agent, free items)`. Among optima, earlier agents
/// prefer receiving nothing, then smaller sets in bundle order.
pub fn optimal_allocation(
    agents: usize,
    bids: &[AtomBid],
    cap: Option<u32>,
) -> Result<(Allocation, Value)> {
    let support = bids.iter().fold(Bundle::EMPTY, |acc, b| acc.union(b.set));
    let top = 32 - support.mask().leading_zeros();
    if top > MAX_ORACLE_ITEMS || agents > MAX_ORACLE_AGENTS {
        return Err(Error::InstanceTooLarge {
            items: top,
            agents,
        });
    }
    if let Some(b) = bids.iter().find(|b| b.agent >= agents) {
        return Err(Error::config(format!(
            "bid for agent {} but only {agents} agents",
            b.agent
        )));
    }

    let mut per_agent: Vec<Vec<(Bundle, Value)>> = vec![Vec::new(); agents];
    for b in bids {
        if b.set.is_empty() || b.value.is_zero() {
            continue;
        }
        if cap.is_some_and(|s| b.set.len() > s) {
            continue;
        }
        per_agent[b.agent].push((b.set, b.value));
    }
    for atoms in &mut per_agent {
        atoms.sort_by_key(|a| a.0);
    }

    let mut search = Search {
        per_agent: &per_agent,
        memo: HashMap::new(),
    };
    let best = search.best(0, support);

    let mut alloc = Allocation::empty(agents);
    let mut free = support;
    for (i, atoms) in per_agent.iter().enumerate() {
        let target = search.best(i, free);
        let skip = search.best(i + 1, free);
        if skip == target {
            continue;
        }
        let &(set, _) = atoms
            .iter()
            .find(|(set, v)| {
                set.is_subset_of(free) && *v + search.best(i + 1, free.difference(*set)) == target
            })
            .expect("memoized optimum must be reconstructible");
        alloc.assign(i, set);
        free = free.difference(set);
    }
    Ok((alloc, best))
}

struct Search<'a> {
    per_agent: &'a [Vec<(Bundle, Value)>],
    memo: HashMap<(usize, u32), Value>,
}

impl Search<'_> {
    fn best(&mut self, agent: usize, free: Bundle) -> Value {
        if agent == self.per_agent.len() || free.is_empty() {
            return Value::ZERO;
        }
        if let Some(&v) = self.memo.get(&(agent, free.mask())) {
            return v;
        }
        let mut best = self.best(agent + 1, free);
        for k in 0..self.per_agent[agent].len() {
            let (set, v) = self.per_agent[agent][k];
            if set.is_subset_of(free) {
                let cand = v + self.best(agent + 1, free.difference(set));
                if cand > best {
                    best = cand;
                }
            }
        }
        self.memo.insert((agent, free.mask()), best);
        best
    }
}

/// Optimum for true types under a feasibility class, flattening each
/// valuation into its atoms.
pub fn optimal_for(types: &[Valuation], feasibility: Feasibility) -> Result<(Allocation, Value)> {
    let bids: Vec<AtomBid> = types
        .iter()
        .enumerate()
        .flat_map(|(agent, t)| {
            t.atoms().iter().map(move |&(set, value)| AtomBid { agent, set, value })
        })
        .collect();
    match feasibility {
        Feasibility::OneSide { a, b, cap } => {
            let within = |part: Bundle| -> Vec<AtomBid> {
                bids.iter().copied().filter(|x| x.set.is_subset_of(part)).collect()
            };
            let left = optimal_allocation(types.len(), &within(a), Some(cap))?;
            let right = optimal_allocation(types.len(), &within(b), Some(cap))?;
            Ok(if right.1 > left.1 { right } else { left })
        }
        other => optimal_allocation(types.len(), &bids, other.cap()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{feasible, social_welfare};

    fn b(items: &[u32]) -> Bundle {
        Bundle::from_items(items.iter().copied())
    }

    fn appendix_types() -> Vec<Valuation> {
        vec![
            Valuation::new([(b(&[0, 1]), Value(4)), (b(&[3]), Value(6))]),
            Valuation::new([(b(&[0]), Value(2)), (b(&[1, 2]), Value(5))]),
            Valuation::single_minded(b(&[2]), Value(4)),
            Valuation::single_minded(b(&[3]), Value(5)),
        ]
    }

    /// Every assignment of items to {nobody, agent 0, ..}, scored by
    /// the valuations' max-over-contained-atoms semantics.
    fn brute_force(types: &[Valuation], m: u32, cap: Option<u32>) -> Value {
        let n = types.len();
        let mut best = Value::ZERO;
        let mut owner = vec![0usize; m as usize];
        loop {
            let mut bundles = vec![0u32; n];
            for (item, &o) in owner.iter().enumerate() {
                if o > 0 {
                    bundles[o - 1] |= 1 << item;
                }
            }
            let ok = cap.is_none_or(|s| bundles.iter().all(|x| x.count_ones() <= s));
            if ok {
                let w: Value = bundles
                    .iter()
                    .zip(types)
                    .map(|(&x, t)| t.value_of(Bundle::from_mask(x)))
                    .sum();
                best = best.max(w);
            }
            let mut k = 0;
            loop {
                if k == owner.len() {
                    return best;
                }
                owner[k] += 1;
                if owner[k] <= n {
                    break;
                }
                owner[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn appendix_optimum_is_thirteen() {
        let types = appendix_types();
        assert_eq!(brute_force(&types, 4, Some(2)), Value(13));
        let (alloc, w) = optimal_for(&types, Feasibility::Capped(2)).unwrap();
        assert_eq!(w, Value(13));
        assert!(feasible(&alloc, Some(2)));
        assert_eq!(social_welfare(&alloc, &types).unwrap(), Value(13));
        assert_eq!(
            alloc.bundles(),
            &[b(&[0, 1]), Bundle::EMPTY, b(&[2]), b(&[3])]
        );
    }

    #[test]
    fn single_agent_gets_best_atom() {
        let types = vec![Valuation::new([(b(&[0]), Value(3)), (b(&[1, 2]), Value(8))])];
        let (alloc, w) = optimal_for(&types, Feasibility::Disjoint).unwrap();
        assert_eq!(w, Value(8));
        assert_eq!(alloc[0], b(&[1, 2]));
    }

    #[test]
    fn partition_example_optimum() {
        // m = 8: B bidder at 10, four A singletons at 9 each.
        let mut types = vec![Valuation::single_minded(b(&[4, 5, 6, 7]), Value(10))];
        for k in 0..4 {
            types.push(Valuation::single_minded(b(&[k]), Value(9)));
        }
        assert_eq!(
            optimal_for(&types, Feasibility::Capped(4)).unwrap().1,
            Value(36 + 10)
        );
        let sides = Feasibility::OneSide {
            a: b(&[0, 1, 2, 3]),
            b: b(&[4, 5, 6, 7]),
            cap: 4,
        };
        let (alloc, w) = optimal_for(&types, sides).unwrap();
        assert_eq!(w, Value(36));
        assert!(sides.admits(&alloc));
    }

    #[test]
    fn too_many_items_rejected() {
        let bids = [AtomBid {
            agent: 0,
            set: Bundle::from_items([30]),
            value: Value(1),
        }];
        assert!(matches!(
            optimal_allocation(1, &bids, None),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
