//! Bidder behaviour: undominated bids, exact best responses,
//! regret-minimizing learners and byzantine bidders.

use rand::Rng;

use crate::error::Result;
use crate::mechanisms::Mechanism;
use crate::model::{Bundle, Declaration, Profile, Rational, Valuation, Value};
use crate::rng::SimRng;

mod learner;

pub use learner::{FplSchedule, LearnerState, MwSchedule};

/// No-overbid policies for byzantine agents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ByzantinePolicy {
    /// A uniform candidate at a uniform bid in `[0, t(S)]`.
    #[default]
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Behavior {
    BestResponse,
    RegretMw(MwSchedule),
    RegretFpl(FplSchedule),
    Byzantine(ByzantinePolicy),
}

impl Behavior {
    pub fn is_learner(&self) -> bool {
        matches!(self, Behavior::RegretMw(_) | Behavior::RegretFpl(_))
    }

    pub fn is_byzantine(&self) -> bool {
        matches!(self, Behavior::Byzantine(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Behavior::BestResponse => "best-response",
            Behavior::RegretMw(_) => "mw",
            Behavior::RegretFpl(_) => "fpl",
            Behavior::Byzantine(_) => "byzantine",
        }
    }
}

/// One bidder: its true valuation, its behaviour, and the fixed list of
/// candidate bundles it chooses among (`∅` first, then its atoms).
#[derive(Clone, Debug, PartialEq)]
pub struct AgentModel {
    pub id: usize,
    pub valuation: Valuation,
    pub behavior: Behavior,
    candidates: Vec<Bundle>,
}

impl AgentModel {
    pub fn new(id: usize, valuation: Valuation, behavior: Behavior) -> Self {
        let mut candidates = vec![Bundle::EMPTY];
        candidates.extend(valuation.atoms().iter().map(|&(s, _)| s));
        candidates.sort();
        candidates.dedup();
        AgentModel {
            id,
            valuation,
            behavior,
            candidates,
        }
    }

    pub fn candidates(&self) -> &[Bundle] {
        &self.candidates
    }

    /// Feedback scale for learners; at least one tick.
    pub fn u_max(&self) -> Value {
        self.valuation.max_value().max(Value(1))
    }
}

/// One model per type, all with the same behaviour.
pub fn population(types: &[Valuation], behavior: Behavior) -> Vec<AgentModel> {
    types
        .iter()
        .enumerate()
        .map(|(i, t)| AgentModel::new(i, t.clone(), behavior))
        .collect()
}

/// Truthful single-minded bid on `chosen`; empty when it is worth nothing.
pub fn undominated_bid(valuation: &Valuation, chosen: Bundle) -> Declaration {
    let v = valuation.value_of(chosen);
    if chosen.is_empty() || v.is_zero() {
        Declaration::Empty
    } else {
        Declaration::bid(chosen, v)
    }
}

/// Expected utility of every candidate's undominated bid against the
/// others' declarations in `profile` (agent `i`'s own entry is ignored).
pub fn counterfactual_utilities(
    i: usize,
    model: &AgentModel,
    profile: &Profile,
    mechanism: &Mechanism,
) -> Result<Vec<Rational>> {
    let mut probe = profile.clone();
    model
        .candidates
        .iter()
        .map(|&s| {
            let d = undominated_bid(&model.valuation, s);
            if d.is_empty() {
                return Ok(Rational::from_integer(0));
            }
            probe.set(i, d);
            mechanism.expected_utility(&probe, i, &model.valuation)
        })
        .collect()
}

/// Index of the first maximum; candidates are in bundle order.
fn argmax(values: &[Rational]) -> usize {
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    best
}

/// Myopic best response of agent `i` to `profile`.
///
/// With `keep_on_tie`, the current declaration survives unless a candidate
/// strictly beats it.
pub fn best_response(
    i: usize,
    model: &AgentModel,
    profile: &Profile,
    mechanism: &Mechanism,
    keep_on_tie: bool,
) -> Result<Declaration> {
    let utils = counterfactual_utilities(i, model, profile, mechanism)?;
    let best = argmax(&utils);
    let choice = undominated_bid(&model.valuation, model.candidates[best]);
    if !keep_on_tie {
        return Ok(choice);
    }
    let current = profile[i];
    let current_u = match model
        .candidates
        .iter()
        .position(|&s| undominated_bid(&model.valuation, s) == current)
    {
        Some(k) => utils[k],
        None => mechanism.expected_utility(profile, i, &model.valuation)?,
    };
    Ok(if utils[best] > current_u { choice } else { current })
}

/// A uniformly random candidate at a uniformly random bid no higher than
/// its true value.
pub fn byzantine_bid(model: &AgentModel, rng: &mut SimRng) -> Declaration {
    let s = model.candidates[rng.gen_range(0..model.candidates.len())];
    let top = model.valuation.value_of(s).ticks();
    let x = rng.gen_range(0..=top);
    if s.is_empty() || x == 0 {
        Declaration::Empty
    } else {
        Declaration::bid(s, Value(x))
    }
}

/// Per-round external regret and the best fixed candidate in hindsight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regret {
    pub average: Rational,
    pub best: Bundle,
}

/// External regret of agent `i` over `history`, each entry being its own
/// declaration and the profile it was played in.
pub fn external_regret(
    i: usize,
    model: &AgentModel,
    history: &[(Declaration, Profile)],
    mechanism: &Mechanism,
) -> Result<Regret> {
    let mut tally = LearnerState::new(model.candidates.len());
    for (own, profile) in history {
        let feedback = counterfactual_utilities(i, model, profile, mechanism)?;
        let played = profile.with(i, *own);
        let realized = mechanism.expected_utility(&played, i, &model.valuation)?;
        tally.observe(&feedback, realized, None);
    }
    Ok(tally.regret(&model.candidates))
}

#[cfg(test)]
mod tests;
