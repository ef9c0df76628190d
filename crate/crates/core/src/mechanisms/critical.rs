use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algorithms::TieOrder;
use crate::error::{Error, Result};
use crate::model::{Bundle, Value};

/// Infimum winning bid on the integer grid.
///
/// `Closed(θ)`: the agent wins at `θ` only because the tie order favours it;
/// `Open(θ)`: it wins at every bid above `θ` regardless of ties, but not at
/// `θ`. Either way `θ` is what a winner pays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Threshold {
    Closed(Value),
    Open(Value),
    Unreachable,
}

impl Threshold {
    pub fn price(self) -> Option<Value> {
        match self {
            Threshold::Closed(v) | Threshold::Open(v) => Some(v),
            Threshold::Unreachable => None,
        }
    }

    /// Whether a bid of `bid` wins under the natural tie order.
    pub fn wins_at(self, bid: Value) -> bool {
        match self {
            Threshold::Closed(t) => bid >= t && !bid.is_zero(),
            Threshold::Open(t) => bid > t,
            Threshold::Unreachable => false,
        }
    }

    /// `min(t, θ)`: the price capped at a value, `t` when unreachable.
    pub fn capped(self, value: Value) -> Value {
        self.price().map_or(value, |p| p.min(value))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Closed(v) => write!(f, "[{v}"),
            Threshold::Open(v) => write!(f, "({v}"),
            Threshold::Unreachable => f.write_str("inf"),
        }
    }
}

/// Critical price of `set` for `agent` given a win predicate.
///
/// `wins(v, ties)` must report whether the agent bidding `v` on `set` is
/// allocated `set`. `known_win` is a bid at which the agent is known to win
/// under the natural order (or a search ceiling); if the predicate fails
/// there the set is [`Threshold::Unreachable`].
pub fn critical_price(
    agent: usize,
    set: Bundle,
    known_win: Value,
    mut wins: impl FnMut(Value, TieOrder) -> bool,
) -> Result<Threshold> {
    if known_win.is_zero() || !wins(known_win, TieOrder::Natural) {
        return Ok(Threshold::Unreachable);
    }
    // invariant: loses at lo (0 always loses), wins at hi
    let (mut lo, mut hi) = (0u64, known_win.ticks());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if wins(Value(mid), TieOrder::Natural) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let k = Value(hi);
    if wins(k, TieOrder::Yield(agent)) {
        return Ok(Threshold::Open(Value(hi - 1)));
    }
    if !wins(Value(hi + 1), TieOrder::Yield(agent)) {
        return Err(Error::NonMonotone {
            agent,
            set,
            detail: format!("wins at {k} only on ties but loses at {} when yielding", hi + 1),
        });
    }
    Ok(Threshold::Closed(k))
}
