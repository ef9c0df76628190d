//! Strategic layer: simplification, exact critical prices and the three
//! mechanisms (any monotone rule with critical prices, the filtered greedy
//! for `s`-CAs, and the trembling general-CA mechanism).

mod critical;
mod separation;
mod simplify;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algorithms::greedy::greedy_where;
use crate::algorithms::{ceil_sqrt, AllocationRule, TieOrder};
use crate::error::{Error, Result};
use crate::model::{
    Allocation, Bundle, Declaration, Feasibility, Outcome, Profile, Rational, Valuation, Value,
};
use crate::rng::SimRng;

pub use critical::{critical_price, Threshold};
pub use separation::{separated_check, separated_for, separated_in_scope, SeparationScope};
pub use simplify::{simplify, simplify_one};

/// The mechanism's own randomness for one round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coin {
    /// Bids for the full item set are discarded this round.
    pub ignore_big: bool,
    /// The fallback lottery fired and picked this agent.
    pub lottery: Option<usize>,
}

impl Coin {
    pub const KEEP: Coin = Coin {
        ignore_big: false,
        lottery: None,
    };
    pub const IGNORE_BIG: Coin = Coin {
        ignore_big: true,
        lottery: None,
    };
}

impl fmt::Display for Coin {
    /// `keep`, `ignore`, or `lottery:<1-based agent>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lottery, self.ignore_big) {
            (Some(k), _) => write!(f, "lottery:{}", k + 1),
            (None, true) => f.write_str("ignore"),
            (None, false) => f.write_str("keep"),
        }
    }
}

#[derive(Clone)]
pub enum MechanismKind {
    /// Simplify, run the rule, charge critical prices.
    Rule(Arc<dyn AllocationRule>),
    /// Greedy for sets of at most `cap` items, keeping a provisional winner
    /// only if its bid beats the sum of all other bids intersecting its set.
    Sca { cap: u32 },
    /// The filtered greedy over sets of at most `⌈√m⌉` items, against the
    /// best bid for all of `M`; bids for `M` are ignored with probability
    /// `gamma`.
    Ca { gamma: Rational },
}

impl fmt::Debug for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MechanismKind::Rule(r) => write!(f, "Rule({})", r.name()),
            MechanismKind::Sca { cap } => write!(f, "Sca {{ cap: {cap} }}"),
            MechanismKind::Ca { gamma } => write!(f, "Ca {{ gamma: {gamma} }}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mechanism {
    kind: MechanismKind,
    items: u32,
    lottery: Option<Rational>,
}

fn check_probability(name: &str, p: Rational) -> Result<()> {
    if p < Rational::from_integer(0) || p >= Rational::from_integer(1) {
        return Err(Error::config(format!("{name} must lie in [0, 1), got {p}")));
    }
    Ok(())
}

fn bernoulli(rng: &mut SimRng, p: Rational) -> bool {
    let (n, d) = (*p.numer(), *p.denom());
    n > 0 && rng.gen_range(0..d as u128) < n as u128
}

impl Mechanism {
    pub fn over_rule(rule: Arc<dyn AllocationRule>, items: u32) -> Self {
        Mechanism {
            kind: MechanismKind::Rule(rule),
            items,
            lottery: None,
        }
    }

    pub fn sca(cap: u32, items: u32) -> Self {
        Mechanism {
            kind: MechanismKind::Sca { cap },
            items,
            lottery: None,
        }
    }

    pub fn ca(items: u32, gamma: Rational) -> Result<Self> {
        check_probability("gamma", gamma)?;
        Ok(Mechanism {
            kind: MechanismKind::Ca { gamma },
            items,
            lottery: None,
        })
    }

    /// Adds the fallback lottery: with probability `delta` a uniformly random
    /// agent receives every item for free if the profile is separated for it.
    pub fn with_lottery(mut self, delta: Rational) -> Result<Self> {
        check_probability("lottery probability", delta)?;
        if matches!(self.kind, MechanismKind::Rule(_)) {
            return Err(Error::config(
                "the fallback lottery applies only to the s-CA and CA mechanisms",
            ));
        }
        self.lottery = Some(delta).filter(|d| *d > Rational::from_integer(0));
        Ok(self)
    }

    pub fn kind(&self) -> &MechanismKind {
        &self.kind
    }

    pub fn items(&self) -> u32 {
        self.items
    }

    pub fn lottery(&self) -> Option<Rational> {
        self.lottery
    }

    pub fn gamma(&self) -> Rational {
        match self.kind {
            MechanismKind::Ca { gamma } => gamma,
            _ => Rational::from_integer(0),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            MechanismKind::Rule(r) => format!("ma[{}]", r.name()),
            MechanismKind::Sca { cap } => format!("msca[s={cap}]"),
            MechanismKind::Ca { gamma } => format!("mca[gamma={gamma}]"),
        }
    }

    pub fn feasibility(&self) -> Feasibility {
        match &self.kind {
            MechanismKind::Rule(r) => r.feasibility(),
            MechanismKind::Sca { cap } => Feasibility::Capped(*cap),
            MechanismKind::Ca { .. } => Feasibility::Disjoint,
        }
    }

    pub fn scope(&self) -> SeparationScope {
        match &self.kind {
            MechanismKind::Rule(_) => SeparationScope::All,
            MechanismKind::Sca { cap } => SeparationScope::Capped(*cap),
            MechanismKind::Ca { .. } => SeparationScope::CaCopies { items: self.items },
        }
    }

    /// Deterministic allocation for a given coin and tie order.
    pub fn allocate(&self, profile: &Profile, coin: Coin, ties: TieOrder) -> Allocation {
        if let Some(k) = coin.lottery {
            let mut alloc = Allocation::empty(profile.len());
            if separated_for(profile, k, profile[k].amount(), self.scope()) {
                alloc.assign(k, Bundle::full(self.items));
            }
            return alloc;
        }
        match &self.kind {
            MechanismKind::Rule(rule) => rule.allocate(profile, ties),
            MechanismKind::Sca { cap } => {
                let cap = *cap;
                filtered_greedy(profile, ties, |s| s.len() <= cap)
            }
            MechanismKind::Ca { .. } => ca_allocate(profile, self.items, coin.ignore_big, ties),
        }
    }

    /// Critical price for `agent` on `set` with the others fixed.
    pub fn critical_price(
        &self,
        profile: &Profile,
        agent: usize,
        set: Bundle,
        coin: Coin,
    ) -> Result<Threshold> {
        if set.is_empty() {
            return Ok(Threshold::Unreachable);
        }
        let others = profile.without(agent);
        let ceiling = others.declared_total() + Value(1);
        self.threshold_below(&others, agent, set, ceiling, coin)
    }

    fn threshold_below(
        &self,
        others: &Profile,
        agent: usize,
        set: Bundle,
        known_win: Value,
        coin: Coin,
    ) -> Result<Threshold> {
        let mut probe = others.clone();
        critical_price(agent, set, known_win, |v, ties| {
            probe.set(agent, Declaration::bid(set, v));
            self.allocate(&probe, coin, ties)[agent] == set
        })
    }

    /// Allocation and critical-price payments. Lottery winners pay nothing.
    pub fn outcome(&self, profile: &Profile, coin: Coin) -> Result<Outcome> {
        let allocation = self.allocate(profile, coin, TieOrder::Natural);
        let mut payments = vec![Value::ZERO; profile.len()];
        if coin.lottery.is_none() {
            for i in allocation.winners() {
                payments[i] = self.winner_payment(profile, i, coin)?;
            }
        }
        Ok(Outcome {
            allocation,
            payments,
        })
    }

    /// Simplify general declarations first, then run.
    pub fn outcome_general(&self, declarations: &[Valuation], coin: Coin) -> Result<Outcome> {
        self.outcome(&simplify(declarations), coin)
    }

    fn winner_payment(&self, profile: &Profile, agent: usize, coin: Coin) -> Result<Value> {
        let Declaration::SingleMinded { set, bid } = profile[agent] else {
            return Ok(Value::ZERO);
        };
        let t = self.threshold_below(profile, agent, set, bid, coin)?;
        t.price().ok_or_else(|| Error::NonMonotone {
            agent,
            set,
            detail: "allocated but no winning bid found".into(),
        })
    }

    /// Realized utility of `agent` under one coin.
    pub fn utility(
        &self,
        profile: &Profile,
        agent: usize,
        valuation: &Valuation,
        coin: Coin,
    ) -> Result<i128> {
        let won = self.allocate(profile, coin, TieOrder::Natural)[agent];
        if won.is_empty() {
            return Ok(0);
        }
        let value = valuation.value_of(won).ticks() as i128;
        if coin.lottery.is_some() {
            return Ok(value);
        }
        Ok(value - self.winner_payment(profile, agent, coin)?.ticks() as i128)
    }

    /// Coin outcomes with their probabilities.
    pub fn branches(&self, agents: usize) -> Vec<(Rational, Coin)> {
        let one = Rational::from_integer(1);
        let gamma = self.gamma();
        let mut base = if gamma > Rational::from_integer(0) {
            vec![(gamma, Coin::IGNORE_BIG), (one - gamma, Coin::KEEP)]
        } else {
            vec![(one, Coin::KEEP)]
        };
        if let Some(delta) = self.lottery.filter(|_| agents > 0) {
            for b in &mut base {
                b.0 *= one - delta;
            }
            let each = delta / Rational::from_integer(agents as i128);
            base.extend((0..agents).map(|k| {
                (
                    each,
                    Coin {
                        ignore_big: false,
                        lottery: Some(k),
                    },
                )
            }));
        }
        base
    }

    /// Exact expectation of `utility` over the coin.
    pub fn expected_utility(
        &self,
        profile: &Profile,
        agent: usize,
        valuation: &Valuation,
    ) -> Result<Rational> {
        let mut total = Rational::from_integer(0);
        for (p, coin) in self.branches(profile.len()) {
            let u = self.utility(profile, agent, valuation, coin)?;
            if u != 0 {
                total += p * Rational::from_integer(u);
            }
        }
        Ok(total)
    }

    pub fn draw_coin(&self, agents: usize, rng: &mut SimRng) -> Coin {
        if let Some(delta) = self.lottery {
            if bernoulli(rng, delta) && agents > 0 {
                return Coin {
                    ignore_big: false,
                    lottery: Some(rng.gen_range(0..agents)),
                };
            }
        }
        Coin {
            ignore_big: bernoulli(rng, self.gamma()),
            lottery: None,
        }
    }

    /// Separation of each agent in this mechanism's competition structure.
    pub fn separated(&self, profile: &Profile, types: &[Valuation]) -> Vec<bool> {
        separated_in_scope(profile, types, self.scope())
    }
}

/// Greedy over eligible sets, then drop each provisional winner whose bid
/// does not exceed the sum of the other eligible bids intersecting its set.
fn filtered_greedy(
    profile: &Profile,
    ties: TieOrder,
    eligible: impl Fn(Bundle) -> bool,
) -> Allocation {
    let mut alloc = greedy_where(profile, ties, |d| eligible(d.set()));
    for i in 0..alloc.len() {
        let won = alloc[i];
        if won.is_empty() {
            continue;
        }
        let blocking: Value = profile
            .iter()
            .enumerate()
            .filter(|&(j, d)| j != i && d.set().intersects(won) && eligible(d.set()))
            .map(|(_, d)| d.amount())
            .sum();
        if profile[i].amount() <= blocking {
            alloc.assign(i, Bundle::EMPTY);
        }
    }
    alloc
}

fn ca_allocate(profile: &Profile, items: u32, ignore_big: bool, ties: TieOrder) -> Allocation {
    let full = Bundle::full(items);
    let small = ceil_sqrt(items);
    let alloc = filtered_greedy(profile, ties, |s| s != full && s.len() <= small);
    if ignore_big {
        return alloc;
    }
    let top = (0..profile.len())
        .filter(|&i| profile[i].set() == full)
        .min_by(|&x, &y| {
            profile[y]
                .amount()
                .cmp(&profile[x].amount())
                .then_with(|| ties.rank(x).cmp(&ties.rank(y)))
        });
    let Some(j) = top else {
        return alloc;
    };
    let bid = profile[j].amount();
    let rivals: Value = profile
        .iter()
        .enumerate()
        .filter(|&(k, d)| k != j && d.set() == full)
        .map(|(_, d)| d.amount())
        .sum();
    if bid > rivals && bid > alloc.declared_welfare(profile) {
        let mut a = Allocation::empty(profile.len());
        a.assign(j, full);
        a
    } else {
        alloc
    }
}

fn support_items(profile: &Profile) -> u32 {
    let support = profile
        .iter()
        .fold(Bundle::EMPTY, |acc, d| acc.union(d.set()));
    32 - support.mask().leading_zeros()
}

/// The generic mechanism over `rule`.
pub fn run_ma(rule: Arc<dyn AllocationRule>, profile: &Profile) -> Result<Outcome> {
    let items = support_items(profile);
    Mechanism::over_rule(rule, items).outcome(profile, Coin::KEEP)
}

pub fn run_msca(profile: &Profile, cap: u32) -> Result<Outcome> {
    Mechanism::sca(cap, support_items(profile)).outcome(profile, Coin::KEEP)
}

pub fn run_mca(profile: &Profile, items: u32, gamma: Rational, coin: Coin) -> Result<Outcome> {
    Mechanism::ca(items, gamma)?.outcome(profile, coin)
}

/// `γ·u(ignore) + (1−γ)·u(keep)` for `agent` declaring `candidate`.
pub fn expected_utility_mca(
    agent: usize,
    candidate: Declaration,
    others: &Profile,
    valuation: &Valuation,
    items: u32,
    gamma: Rational,
) -> Result<Rational> {
    Mechanism::ca(items, gamma)?.expected_utility(&others.with(agent, candidate), agent, valuation)
}
