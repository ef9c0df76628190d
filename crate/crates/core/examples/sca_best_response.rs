//! Best-response dynamics on the s-CA mechanism: welfare against the
//! guarantee, separation in every round, and the rival-or-own fractions.

use auctionlab::agents::{population, Behavior};
use auctionlab::algorithms::optimal_for;
use auctionlab::dynamics::{run_replicas, DynamicsKind, RunConfig};
use auctionlab::instances::random_sca;
use auctionlab::mechanisms::Mechanism;
use auctionlab::metrics::{lemma6_fractions, lemma9_check, welfare_report};
use auctionlab::model::rational_to_f64;
use auctionlab::rng::seeded;

fn main() -> auctionlab::Result<()> {
    let mut rng = seeded(2024);
    let inst = random_sca(&mut rng, 6, 8, 2, 32);
    let mech = Mechanism::sca(2, inst.items);
    let mut cfg = RunConfig::new(mech.clone(), population(&inst.types, Behavior::BestResponse), DynamicsKind::BestResponse, 200 * 6);
    cfg.replicas = 8;
    let (optimal, optimum) = optimal_for(&inst.types, mech.feasibility())?;
    println!("SW_opt = {optimum}; guarantee ratio 1/24 - epsilon");
    for trace in run_replicas(&cfg)? {
        let w = welfare_report(&trace, &inst.types, optimum)?;
        let separated = trace
            .records
            .iter()
            .all(|r| mech.separated(&r.profile, &inst.types).iter().all(|&s| s));
        let fractions: Vec<f64> = lemma6_fractions(&trace, &inst.types, &optimal).fractions.iter().map(rational_to_f64).collect();
        let last = &trace.records.last().expect("rounds").profile;
        let l9 = lemma9_check(last, &inst.types, &optimal, 2, inst.items);
        println!(
            "replica {}: ratio {:.3}, separated {separated}, rival-or-own {fractions:.2?}, final declared {} vs {:.2}",
            trace.replica,
            rational_to_f64(&w.ratio),
            l9.declared,
            rational_to_f64(&l9.bound)
        );
    }
    Ok(())
}
