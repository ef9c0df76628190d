//! Exact welfare maximization under the three feasibility regimes.

use auctionlab::algorithms::optimal_for;
use auctionlab::instances::{appendix_c, random_ca};
use auctionlab::model::{Bundle, Feasibility};
use auctionlab::rng::seeded;

fn main() -> auctionlab::Result<()> {
    let inst = appendix_c();
    for f in [
        Feasibility::Disjoint,
        Feasibility::Capped(1),
        Feasibility::OneSide {
            a: Bundle::from_items([0, 1]),
            b: Bundle::from_items([2, 3]),
            cap: 2,
        },
    ] {
        let (alloc, value) = optimal_for(&inst.types, f)?;
        let won: Vec<String> = alloc.iter().map(|b| inst.describe(*b)).collect();
        println!("{f:?}: SW_opt = {value}, allocation {won:?}");
    }

    let mut rng = seeded(7);
    let big = random_ca(&mut rng, 8, 16, 32);
    let start = std::time::Instant::now();
    let (_, value) = optimal_for(&big.types, Feasibility::Disjoint)?;
    println!("random 8 agents x 16 items: SW_opt = {value} in {:?}", start.elapsed());
    Ok(())
}
