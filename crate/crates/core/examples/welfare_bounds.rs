//! Per-profile welfare inequalities: declared welfare against the sum of
//! critical prices on the optimal bundles, for the greedy rule.

use std::sync::Arc;

use auctionlab::algorithms::{optimal_for, GreedySca, RandomProfiles};
use auctionlab::mechanisms::Mechanism;
use auctionlab::metrics::lemma3_check;
use auctionlab::model::{Declaration, Feasibility, Rational, Valuation};
use auctionlab::rng::seeded;

fn main() -> auctionlab::Result<()> {
    let mut rng = seeded(5);
    for s in 1..=3u32 {
        let grid = RandomProfiles {
            agents: 5,
            items: 8,
            max_value: 32,
            max_set: s,
        };
        let mech = Mechanism::over_rule(Arc::new(GreedySca { cap: s }), grid.items);
        let c = Rational::from_integer(s as i128 + 1);
        let (mut tight, mut violations) = (Rational::from_integer(100), 0);
        for _ in 0..2_000 {
            let profile = grid.sample(&mut rng);
            let types: Vec<Valuation> = profile.iter().map(Declaration::to_valuation).collect();
            let (optimal, _) = optimal_for(&types, Feasibility::Capped(s))?;
            let check = lemma3_check(&mech, &profile, &optimal)?;
            if !check.holds(c) {
                violations += 1;
            }
            if check.thresholds.ticks() > 0 {
                let slack = Rational::new(check.declared.ticks() as i128, check.thresholds.ticks() as i128);
                tight = tight.min(slack);
            }
        }
        println!("s = {s}: {violations} violations; smallest declared/thresholds = {tight} (need >= 1/{c})");
    }
    Ok(())
}
