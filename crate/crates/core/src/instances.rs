//! Built-in instances and seeded random instance families.

use rand::seq::index::sample;
use rand::Rng;

use crate::algorithms::{ceil_sqrt, PartitionMax};
use crate::error::{Error, Result};
use crate::model::{Bundle, Declaration, Instance, Profile, Rational, Valuation, Value};
use crate::rng::SimRng;

/// Four items `a..d` and four agents; greedy best-response dynamics over
/// this instance cycle forever.
pub fn appendix_c() -> Instance {
    let b = |items: &[u32]| Bundle::from_items(items.iter().copied());
    let types = vec![
        Valuation::new([(b(&[0, 1]), Value(4)), (b(&[3]), Value(6))]),
        Valuation::new([(b(&[0]), Value(2)), (b(&[1, 2]), Value(5))]),
        Valuation::single_minded(b(&[2]), Value(4)),
        Valuation::single_minded(b(&[3]), Value(5)),
    ];
    let mut inst = Instance::new(4, Some(2), types);
    inst.labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    inst
}

/// The two-sided example on which a rule that is not loser-independent
/// gets stuck at a poor equilibrium.
#[derive(Clone, Debug)]
pub struct SidedExample {
    pub instance: Instance,
    pub rule: PartitionMax,
    /// Only the agent wanting all of `B` declares; everyone else is empty.
    pub stuck: Profile,
}

/// Items `0..m/2` form side `A`, the rest side `B`. Agent 0 wants all of `B`
/// at `scale` ticks; agents `1..=m/2` each want one item of `A` at
/// `scale·(1−ε)` ticks, which must be a whole number.
pub fn sided_example(m: u32, scale: u64, epsilon: Rational) -> Result<SidedExample> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::config(format!("item count must be even and positive, got {m}")));
    }
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if epsilon <= zero || epsilon >= one {
        return Err(Error::config("epsilon must lie strictly between 0 and 1"));
    }
    let low = Rational::from_integer(scale as i128) * (one - epsilon);
    if !low.is_integer() || low <= zero {
        return Err(Error::config(format!(
            "scale {scale} does not give whole ticks at epsilon {epsilon}"
        )));
    }
    let low = Value(low.to_integer() as u64);
    let half = m / 2;
    let a = Bundle::from_items(0..half);
    let b = Bundle::from_items(half..m);
    let mut types = vec![Valuation::single_minded(b, Value(scale))];
    types.extend((0..half).map(|k| Valuation::single_minded(Bundle::singleton(k), low)));
    let stuck = Profile::empty(types.len()).with(0, Declaration::bid(b, Value(scale)));
    Ok(SidedExample {
        instance: Instance::new(m, Some(half), types),
        rule: PartitionMax::for_items(a, b, m, half)?,
        stuck,
    })
}

fn random_set(rng: &mut SimRng, items: u32, size: u32) -> Bundle {
    Bundle::from_items(
        sample(rng, items as usize, size as usize)
            .into_iter()
            .map(|i| i as u32),
    )
}

/// Random s-CA instance: every agent has one to three atoms of at most
/// `cap` items, valued uniformly in `1..=max_value` ticks.
pub fn random_sca(
    rng: &mut SimRng,
    agents: usize,
    items: u32,
    cap: u32,
    max_value: u64,
) -> Instance {
    let cap = cap.clamp(1, items.max(1));
    let types = (0..agents)
        .map(|_| {
            let atoms = rng.gen_range(1..=3);
            Valuation::new((0..atoms).map(|_| {
                let size = rng.gen_range(1..=cap);
                (random_set(rng, items, size), Value(rng.gen_range(1..=max_value)))
            }))
        })
        .collect();
    Instance::new(items, Some(cap), types)
}

/// Random CA instance mixing small sets (at most `⌈√m⌉` items), an
/// occasional medium set, and bids for the grand bundle valued up to
/// `2·max_value`.
pub fn random_ca(rng: &mut SimRng, agents: usize, items: u32, max_value: u64) -> Instance {
    let small = ceil_sqrt(items).min(items);
    let types = (0..agents)
        .map(|_| {
            let atoms = rng.gen_range(1..=3);
            Valuation::new((0..atoms).map(|_| {
                let roll = rng.gen_range(0..10);
                if roll < 2 {
                    (Bundle::full(items), Value(rng.gen_range(1..=2 * max_value)))
                } else if roll == 2 && small + 1 < items {
                    let size = rng.gen_range(small + 1..items);
                    (random_set(rng, items, size), Value(rng.gen_range(1..=max_value)))
                } else {
                    let size = rng.gen_range(1..=small);
                    (random_set(rng, items, size), Value(rng.gen_range(1..=max_value)))
                }
            }))
        })
        .collect();
    Instance::new(items, None, types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::optimal_for;
    use crate::model::Feasibility;
    use crate::rng::seeded;

    #[test]
    fn appendix_instance_optimum() {
        let inst = appendix_c();
        let (_, best) = optimal_for(&inst.types, Feasibility::Capped(2)).unwrap();
        assert_eq!(best, Value(13));
        assert_eq!(inst.describe(Bundle::from_items([0, 1])), "{a,b}");
    }

    #[test]
    fn sided_example_shape() {
        let ex = sided_example(8, 10, Rational::new(1, 10)).unwrap();
        assert_eq!(ex.instance.agents(), 5);
        assert_eq!(ex.instance.types[1].max_value(), Value(9));
        assert_eq!(ex.stuck[0].amount(), Value(10));
        assert!(sided_example(8, 7, Rational::new(1, 10)).is_err());
        assert!(sided_example(7, 10, Rational::new(1, 10)).is_err());
    }

    #[test]
    fn random_instances_respect_limits() {
        let mut rng = seeded(5);
        for _ in 0..200 {
            let inst = random_sca(&mut rng, 6, 8, 2, 32);
            for t in &inst.types {
                assert!(t.atoms().iter().all(|(s, v)| s.len() <= 2 && v.ticks() <= 32));
                assert!(!t.is_zero());
            }
            let inst = random_ca(&mut rng, 6, 9, 32);
            for t in &inst.types {
                assert!(t.atoms().iter().all(|(s, _)| s.fits(9)));
            }
        }
    }
}
