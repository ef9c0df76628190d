//! A rule that is not loser-independent admits a zero-regret profile with
//! welfare far from optimal.

use std::sync::Arc;

use auctionlab::agents::{external_regret, population, Behavior};
use auctionlab::algorithms::optimal_for;
use auctionlab::instances::sided_example;
use auctionlab::mechanisms::{Coin, Mechanism};
use auctionlab::model::{fmt_rational, Rational};

fn main() -> auctionlab::Result<()> {
    for m in [4, 8, 16] {
        let ex = sided_example(m, 10, Rational::new(1, 10))?;
        let inst = &ex.instance;
        let mech = Mechanism::over_rule(Arc::new(ex.rule.clone()), m);
        let (_, optimum) = optimal_for(&inst.types, mech.feasibility())?;
        let outcome = mech.outcome(&ex.stuck, Coin::KEEP)?;
        let welfare: u64 = outcome
            .allocation
            .iter()
            .zip(&inst.types)
            .map(|(b, t)| t.value_of(*b).ticks())
            .sum();
        let agents = population(&inst.types, Behavior::BestResponse);
        let mut worst = Rational::from_integer(0);
        for (i, a) in agents.iter().enumerate() {
            let r = external_regret(i, a, &[(ex.stuck[i], ex.stuck.clone())], &mech)?;
            worst = worst.max(r.average);
        }
        println!(
            "m = {m:>2}: welfare {welfare} of {optimum} (ratio {}), largest regret {}",
            fmt_rational(&Rational::new(welfare as i128, optimum.ticks() as i128)),
            fmt_rational(&worst)
        );
    }
    Ok(())
}
