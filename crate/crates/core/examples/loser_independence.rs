//! Randomized and exhaustive property checks on allocation rules.

use auctionlab::algorithms::{
    check_loser_independent, check_loser_independent_exhaustive, check_monotone, CombinedCa, GreedySca,
    PartitionMax, RandomProfiles,
};
use auctionlab::model::Bundle;

fn main() -> auctionlab::Result<()> {
    let grid = RandomProfiles {
        agents: 4,
        items: 6,
        max_value: 12,
        max_set: 3,
    };
    let greedy = GreedySca { cap: 2 };
    let combined = CombinedCa { items: 6 };
    println!("greedy monotone witness: {:?}", check_monotone(&greedy, &grid, 20_000, 1));
    println!("greedy loser-independence witness: {:?}", check_loser_independent(&greedy, &grid, 20_000, 2));
    println!("combined loser-independence witness: {:?}", check_loser_independent(&combined, &grid, 20_000, 3));

    let sided = PartitionMax::new(Bundle::from_items([0, 1]), Bundle::from_items([2, 3]), 2)?;
    match check_loser_independent_exhaustive(&sided, 3, 4, 3) {
        Some(w) => println!(
            "partition-max: agent {} with {:?} gets {} against {:?} but {} against {:?}",
            w.agent + 1,
            w.declaration,
            w.won,
            w.others,
            w.won_alt,
            w.others_alt
        ),
        None => println!("partition-max: no witness"),
    }
    Ok(())
}
