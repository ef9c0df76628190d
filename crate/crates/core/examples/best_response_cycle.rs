//! Best responses on the greedy mechanism never settle on the four-agent
//! instance: a scripted order walks into a 4-cycle, and random orders keep
//! moving once the single-minded agents bid truthfully. From the all-empty
//! start a random order can instead stop where agents 3 and 4 never bid.

use std::sync::Arc;

use auctionlab::agents::{population, Behavior};
use auctionlab::algorithms::GreedySca;
use auctionlab::dynamics::{
    change_rounds, detect_cycle, is_equilibrium, run, scripted_order_mode, visits_equilibrium, DynamicsKind, RunConfig,
};
use auctionlab::instances::appendix_c;
use auctionlab::mechanisms::{Coin, Mechanism};
use auctionlab::model::{Bundle, Declaration, Instance, Profile, Value};

fn show(inst: &Instance, d: &Declaration) -> String {
    match d {
        Declaration::Empty => "-".into(),
        Declaration::SingleMinded { set, bid } => format!("{}@{bid}", inst.describe(*set)),
    }
}

fn main() -> auctionlab::Result<()> {
    let inst = appendix_c();
    let mech = Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), inst.items);
    let cfg = RunConfig::new(mech.clone(), population(&inst.types, Behavior::BestResponse), DynamicsKind::BestResponse, 13);

    let order = [2, 3, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0];
    let trace = scripted_order_mode(&cfg, &order)?;
    for r in &trace.records {
        let decls: Vec<String> = r.profile.iter().map(|d| show(&inst, d)).collect();
        let utils: Vec<i128> = (0..4)
            .map(|i| mech.utility(&r.profile, i, &inst.types[i], Coin::KEEP))
            .collect::<Result<_, _>>()?;
        println!("{:>2} agent {} | {:<40} | utilities {utils:?}", r.round, r.updater, decls.join("  "));
    }
    println!("cycle: {:?}", detect_cycle(&trace));

    let mut random = cfg.clone();
    random.rounds = 10_000;
    random.scripted_order = None;
    let truthful = Profile::empty(4)
        .with(2, Declaration::bid(Bundle::singleton(2), Value(4)))
        .with(3, Declaration::bid(Bundle::singleton(3), Value(5)));
    for start in [None, Some(truthful)] {
        random.start = start;
        println!("start: {}", if random.start.is_some() { "truthful single-minded" } else { "empty" });
        for seed in 0..5 {
            random.seed = seed;
            let t = run(&random, 0)?;
            let last = t.records.last().map(|r| r.profile.clone()).unwrap_or_default();
            println!(
                "  seed {seed}: {} changes, last at round {:?}; final is equilibrium: {}; any equilibrium visited: {}",
                change_rounds(&t).len(),
                change_rounds(&t).last(),
                is_equilibrium(&last, &random.agents, &mech)?,
                visits_equilibrium(&t, &random.agents, &mech)?
            );
        }
    }
    Ok(())
}
