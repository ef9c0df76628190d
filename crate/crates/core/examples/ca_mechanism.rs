//! The CA mechanism: the coin that hides bids for the full set, exact
//! expected utilities, and the optional fallback lottery.

use auctionlab::mechanisms::{Coin, Mechanism};
use auctionlab::model::{fmt_rational, Bundle, Declaration, Profile, Rational, Valuation, Value};

fn main() -> auctionlab::Result<()> {
    let m = 9;
    let full = Bundle::full(m);
    let profile = Profile::new(vec![
        Declaration::bid(Bundle::from_items([0, 1]), Value(6)),
        Declaration::bid(Bundle::from_items([2, 3, 4]), Value(5)),
        Declaration::bid(full, Value(14)),
        Declaration::bid(Bundle::from_items([5]), Value(2)),
    ]);
    let types: Vec<Valuation> = profile.iter().map(Declaration::to_valuation).collect();

    let mech = Mechanism::ca(m, Rational::new(1, 100))?;
    for coin in [Coin::KEEP, Coin::IGNORE_BIG] {
        let o = mech.outcome(&profile, coin)?;
        println!("{coin}: winners {:?}, payments {:?}", o.allocation.winners().collect::<Vec<_>>(), o.payments);
    }
    for (i, t) in types.iter().enumerate() {
        println!("agent {} expected utility {}", i + 1, fmt_rational(&mech.expected_utility(&profile, i, t)?));
    }

    let lottery = mech.with_lottery(Rational::new(1, 20))?;
    println!("with lottery, {} coin branches:", lottery.branches(profile.len()).len());
    for (p, coin) in lottery.branches(profile.len()) {
        println!("  p = {:<8} {coin}", fmt_rational(&p));
    }
    Ok(())
}
