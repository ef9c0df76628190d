//! Multiplicative-weights learners bidding in the greedy mechanism on the
//! four-agent instance, then the same with follow-the-perturbed-leader.
//!
//! ```text
//! cargo run --release --example regret_dynamics -- 20000
//! ```

use std::sync::Arc;

use auctionlab::agents::{population, Behavior, FplSchedule, MwSchedule};
use auctionlab::algorithms::{optimal_for, GreedySca};
use auctionlab::dynamics::{run, DynamicsKind, RunConfig};
use auctionlab::instances::appendix_c;
use auctionlab::mechanisms::Mechanism;
use auctionlab::metrics::{regret_report, welfare_report};
use auctionlab::model::{fmt_rational, rational_to_f64};

fn main() -> auctionlab::Result<()> {
    let rounds: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5_000);
    let inst = appendix_c();
    let mech = Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), inst.items);
    let (_, optimum) = optimal_for(&inst.types, mech.feasibility())?;

    for behavior in [
        Behavior::RegretMw(MwSchedule::Standard),
        Behavior::RegretFpl(FplSchedule::default()),
    ] {
        let mut cfg = RunConfig::new(mech.clone(), population(&inst.types, behavior), DynamicsKind::Regret, rounds);
        cfg.seed = 42;
        let trace = run(&cfg, 0)?;
        let welfare = welfare_report(&trace, &inst.types, optimum)?;
        println!(
            "{:>3}: T={rounds} average welfare {:.3} of {optimum} (ratio {:.3})",
            behavior.label(),
            rational_to_f64(&welfare.average),
            rational_to_f64(&welfare.ratio)
        );
        for (i, r) in regret_report(&trace, &cfg.agents).agents.iter().enumerate() {
            if let Some(r) = r {
                println!(
                    "     agent {}: regret {:.4} ({}), best fixed bundle {}",
                    i + 1,
                    rational_to_f64(&r.average),
                    fmt_rational(&r.average),
                    inst.describe(r.best)
                );
            }
        }
    }
    Ok(())
}
