//! Simplification, allocation and critical-price payments in the generic
//! mechanism over the greedy rule.

use std::sync::Arc;

use auctionlab::algorithms::GreedySca;
use auctionlab::mechanisms::{simplify, Coin, Mechanism};
use auctionlab::model::{Bundle, Valuation, Value};

fn main() -> auctionlab::Result<()> {
    let b = |items: &[u32]| Bundle::from_items(items.iter().copied());
    let declarations = vec![
        Valuation::new([(b(&[0, 1]), Value(9)), (b(&[2]), Value(4))]),
        Valuation::single_minded(b(&[1]), Value(6)),
        Valuation::new([(b(&[2]), Value(5)), (b(&[0]), Value(3))]),
        Valuation::single_minded(b(&[0, 2]), Value(7)),
    ];
    let mech = Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), 3);
    let profile = simplify(&declarations);
    let outcome = mech.outcome(&profile, Coin::KEEP)?;
    for (i, d) in profile.iter().enumerate() {
        let won = outcome.allocation[i];
        print!("agent {}: declares {:?}", i + 1, d);
        if won.is_empty() {
            let theta = mech.critical_price(&profile, i, d.set(), Coin::KEEP)?;
            println!(", loses; would need {theta:?}");
        } else {
            println!(", wins {won} and pays {}", outcome.payments[i]);
        }
    }
    Ok(())
}
