//! Learners keep their welfare share when one bidder plays at random:
//! welfare is compared with the optimum over the learners alone.

use std::sync::Arc;

use auctionlab::agents::{population, Behavior, ByzantinePolicy, MwSchedule};
use auctionlab::algorithms::GreedySca;
use auctionlab::dynamics::{run_replicas, DynamicsKind, RunConfig};
use auctionlab::instances::appendix_c;
use auctionlab::mechanisms::Mechanism;
use auctionlab::metrics::resilience_report;
use auctionlab::model::rational_to_f64;

fn main() -> auctionlab::Result<()> {
    let inst = appendix_c();
    let mech = Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), inst.items);
    let mut agents = population(&inst.types, Behavior::RegretMw(MwSchedule::Standard));
    agents[3].behavior = Behavior::Byzantine(ByzantinePolicy::Uniform);
    let mut cfg = RunConfig::new(mech.clone(), agents, DynamicsKind::Regret, 5_000);
    cfg.replicas = 4;
    for trace in run_replicas(&cfg)? {
        let r = resilience_report(&trace, &inst.types, &[3], mech.feasibility())?;
        println!(
            "replica {}: average {:.3} against learners' optimum {} (ratio {:.3}; target 1/4 - 0.05)",
            trace.replica,
            rational_to_f64(&r.welfare.average),
            r.welfare.optimum,
            rational_to_f64(&r.welfare.ratio)
        );
    }
    Ok(())
}
