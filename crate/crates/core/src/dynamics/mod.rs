//! Repeated-game engines.
//!
//! Regret rounds let every learner pick a declaration simultaneously;
//! best-response rounds let one agent (random or scripted) update. Both
//! record the full profile, coin and outcome of every round.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::agents::{
    best_response, byzantine_bid, counterfactual_utilities, undominated_bid, AgentModel,
    Behavior, LearnerState,
};
use crate::error::{Error, Result};
use crate::mechanisms::{Coin, Mechanism};
use crate::model::{true_welfare, Outcome, Profile, Rational, Valuation, Value};
use crate::rng::{stream, SimRng, Stream};

/// The two simplifying assumptions on best-response behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Assumptions {
    /// Every agent starts from the empty declaration.
    pub empty_start: bool,
    /// An agent that cannot strictly improve keeps its declaration.
    pub keep_on_tie: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            empty_start: true,
            keep_on_tie: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicsKind {
    Regret,
    BestResponse,
}

impl DynamicsKind {
    pub fn label(self) -> &'static str {
        match self {
            DynamicsKind::Regret => "regret",
            DynamicsKind::BestResponse => "best-response",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mechanism: Mechanism,
    pub agents: Vec<AgentModel>,
    pub kind: DynamicsKind,
    pub rounds: usize,
    pub seed: u64,
    /// Slack used by the acceptance computations.
    pub epsilon: Rational,
    pub assumptions: Assumptions,
    /// Zero-based agent indices, cycled; best-response runs only.
    pub scripted_order: Option<Vec<usize>>,
    /// Explicit starting declarations for best-response runs, in place of
    /// the empty or random start.
    pub start: Option<Profile>,
    pub replicas: u64,
}

impl RunConfig {
    pub fn new(
        mechanism: Mechanism,
        agents: Vec<AgentModel>,
        kind: DynamicsKind,
        rounds: usize,
    ) -> Self {
        RunConfig {
            mechanism,
            agents,
            kind,
            rounds,
            seed: 0,
            epsilon: Rational::new(1, 10),
            assumptions: Assumptions::default(),
            scripted_order: None,
            start: None,
            replicas: 1,
        }
    }

    pub fn types(&self) -> Vec<Valuation> {
        self.agents.iter().map(|a| a.valuation.clone()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::config("the number of rounds must be at least 1"));
        }
        if self.replicas == 0 {
            return Err(Error::config("the number of replicas must be at least 1"));
        }
        if self.epsilon < Rational::from_integer(0) {
            return Err(Error::config("epsilon must be non-negative"));
        }
        let items = self.mechanism.items();
        for (i, a) in self.agents.iter().enumerate() {
            if a.id != i {
                return Err(Error::config(format!("agent at position {i} has id {}", a.id)));
            }
            if !a.valuation.support().fits(items) {
                return Err(Error::config(format!(
                    "agent {} values items beyond the {items} on sale",
                    i + 1
                )));
            }
            let ok = match self.kind {
                DynamicsKind::Regret => a.behavior != Behavior::BestResponse,
                DynamicsKind::BestResponse => !a.behavior.is_learner(),
            };
            if !ok {
                return Err(Error::config(format!(
                    "agent {} behaves as {} in {} dynamics",
                    i + 1,
                    a.behavior.label(),
                    self.kind.label()
                )));
            }
        }
        let Assumptions {
            empty_start,
            keep_on_tie,
        } = self.assumptions;
        if (!empty_start || !keep_on_tie) && self.mechanism.lottery().is_none() {
            return Err(Error::config(
                "dropping the empty-start or keep-on-tie assumption requires the fallback lottery",
            ));
        }
        if let Some(order) = &self.scripted_order {
            if self.kind != DynamicsKind::BestResponse {
                return Err(Error::config("a scripted order needs best-response dynamics"));
            }
            if order.is_empty() {
                return Err(Error::config("the scripted order is empty"));
            }
            if let Some(bad) = order.iter().find(|&&i| i >= self.agents.len()) {
                return Err(Error::config(format!("scripted order names unknown agent {}", bad + 1)));
            }
        }
        if let Some(start) = &self.start {
            if self.kind != DynamicsKind::BestResponse {
                return Err(Error::config("a start profile needs best-response dynamics"));
            }
            if start.len() != self.agents.len() {
                return Err(Error::config(format!(
                    "start profile has {} declarations for {} agents",
                    start.len(),
                    self.agents.len()
                )));
            }
            if start.iter().any(|d| !d.set().fits(items)) {
                return Err(Error::config("start profile bids on items beyond those on sale"));
            }
        }
        Ok(())
    }
}

/// Who updated in a round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Updater {
    All,
    Agent(usize),
    Nobody,
}

impl fmt::Display for Updater {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Updater::All => f.write_str("all"),
            Updater::Agent(i) => write!(f, "{}", i + 1),
            Updater::Nobody => f.write_str("-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    /// One-based.
    pub round: usize,
    pub updater: Updater,
    /// The profile after this round's updates.
    pub profile: Profile,
    pub coin: Coin,
    pub outcome: Outcome,
    pub declared_welfare: Value,
    pub true_welfare: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub replica: u64,
    pub initial: Profile,
    pub records: Vec<RoundRecord>,
    /// Learner totals at the end of a regret run, per agent.
    pub learners: Vec<Option<LearnerState>>,
    /// Leading rounds before which separation is not expected.
    pub warmup: usize,
}

impl Trace {
    pub fn rounds(&self) -> usize {
        self.records.len()
    }

    pub fn profiles(&self) -> impl Iterator<Item = &Profile> + '_ {
        self.records.iter().map(|r| &r.profile)
    }

    /// Re-runs the mechanism on every recorded profile and coin.
    pub fn replays(&self, mechanism: &Mechanism) -> Result<bool> {
        for r in &self.records {
            if mechanism.outcome(&r.profile, r.coin)? != r.outcome {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn welfare(outcome: &Outcome, profile: &Profile, types: &[Valuation]) -> (Value, Value) {
    let declared = outcome.allocation.declared_welfare(profile);
    (declared, true_welfare(&outcome.allocation, types))
}

fn initial_profile(config: &RunConfig, replica: u64) -> Profile {
    if let Some(start) = &config.start {
        return start.clone();
    }
    if config.assumptions.empty_start {
        return Profile::empty(config.agents.len());
    }
    let mut rng = stream(config.seed, replica, Stream::Init);
    config
        .agents
        .iter()
        .map(|a| byzantine_bid(a, &mut rng))
        .collect()
}

struct Engine<'a> {
    config: &'a RunConfig,
    types: Vec<Valuation>,
    coin_rng: SimRng,
    agent_rngs: Vec<SimRng>,
    records: Vec<RoundRecord>,
}

impl<'a> Engine<'a> {
    fn new(config: &'a RunConfig, replica: u64) -> Self {
        Engine {
            config,
            types: config.types(),
            coin_rng: stream(config.seed, replica, Stream::Coin),
            agent_rngs: (0..config.agents.len())
                .map(|i| stream(config.seed, replica, Stream::Agent(i)))
                .collect(),
            records: Vec::with_capacity(config.rounds),
        }
    }

    fn record(&mut self, round: usize, updater: Updater, profile: &Profile) -> Result<()> {
        let mech = &self.config.mechanism;
        let coin = mech.draw_coin(profile.len(), &mut self.coin_rng);
        let outcome = mech.outcome(profile, coin)?;
        let (declared_welfare, true_welfare) = welfare(&outcome, profile, &self.types);
        self.records.push(RoundRecord {
            round,
            updater,
            profile: profile.clone(),
            coin,
            outcome,
            declared_welfare,
            true_welfare,
        });
        Ok(())
    }
}

/// Every learner samples a candidate each round; feedback is the full
/// vector of counterfactual utilities against the profile just played.
pub fn run_regret_dynamics(config: &RunConfig, replica: u64) -> Result<Trace> {
    config.validate()?;
    if config.kind != DynamicsKind::Regret {
        return Err(Error::config("not a regret-dynamics configuration"));
    }
    let n = config.agents.len();
    let mech = &config.mechanism;
    let mut engine = Engine::new(config, replica);
    let mut states: Vec<Option<LearnerState>> = config
        .agents
        .iter()
        .map(|a| a.behavior.is_learner().then(|| LearnerState::new(a.candidates().len())))
        .collect();
    let initial = Profile::empty(n);
    let mut profile = initial.clone();
    let mut chosen = vec![0usize; n];
    for t in 1..=config.rounds {
        for (i, a) in config.agents.iter().enumerate() {
            let rng = &mut engine.agent_rngs[i];
            let decl = match (&a.behavior, &states[i]) {
                (Behavior::RegretMw(_), Some(s)) => {
                    chosen[i] = s.choose_mw(rng);
                    undominated_bid(&a.valuation, a.candidates()[chosen[i]])
                }
                (Behavior::RegretFpl(f), Some(s)) => {
                    chosen[i] = s.choose_fpl(rng, f.range(a.u_max(), t as u64));
                    undominated_bid(&a.valuation, a.candidates()[chosen[i]])
                }
                _ => byzantine_bid(a, rng),
            };
            profile.set(i, decl);
        }
        let updater = if n == 0 { Updater::Nobody } else { Updater::All };
        engine.record(t, updater, &profile)?;
        for (i, a) in config.agents.iter().enumerate() {
            let Some(state) = states[i].as_mut() else {
                continue;
            };
            let feedback = counterfactual_utilities(i, a, &profile, mech)?;
            let step = match a.behavior {
                Behavior::RegretMw(s) => {
                    Some(s.eta(feedback.len(), t as u64) / a.u_max().ticks() as f64)
                }
                _ => None,
            };
            let realized = feedback[chosen[i]];
            state.observe(&feedback, realized, step);
        }
    }
    Ok(Trace {
        replica,
        initial,
        records: engine.records,
        learners: states,
        warmup: usize::from(!config.assumptions.empty_start),
    })
}

/// One agent updates per round: uniformly at random, or following the
/// configured scripted order.
pub fn run_best_response_dynamics(config: &RunConfig, replica: u64) -> Result<Trace> {
    config.validate()?;
    if config.kind != DynamicsKind::BestResponse {
        return Err(Error::config("not a best-response configuration"));
    }
    let n = config.agents.len();
    let mech = &config.mechanism;
    let mut engine = Engine::new(config, replica);
    let mut order_rng = stream(config.seed, replica, Stream::Order);
    let initial = initial_profile(config, replica);
    let mut profile = initial.clone();
    let mut updated = vec![false; n];
    let mut warmup = 0;
    for t in 1..=config.rounds {
        let updater = match (&config.scripted_order, n) {
            (_, 0) => Updater::Nobody,
            (Some(order), _) => Updater::Agent(order[(t - 1) % order.len()]),
            (None, _) => Updater::Agent(order_rng.gen_range(0..n)),
        };
        if let Updater::Agent(i) = updater {
            let a = &config.agents[i];
            let decl = match a.behavior {
                Behavior::Byzantine(_) => byzantine_bid(a, &mut engine.agent_rngs[i]),
                _ => best_response(i, a, &profile, mech, config.assumptions.keep_on_tie)?,
            };
            profile.set(i, decl);
            if !updated[i] {
                updated[i] = true;
                if updated.iter().all(|&u| u) {
                    warmup = t;
                }
            }
        }
        engine.record(t, updater, &profile)?;
    }
    if config.assumptions.empty_start || config.start.is_some() {
        warmup = 0;
    } else if updated.iter().any(|&u| !u) {
        warmup = config.rounds;
    }
    Ok(Trace {
        replica,
        initial,
        records: engine.records,
        learners: vec![None; n],
        warmup,
    })
}

/// Best-response dynamics with the given zero-based update order, cycled.
pub fn scripted_order_mode(config: &RunConfig, order: &[usize]) -> Result<Trace> {
    let mut c = config.clone();
    c.kind = DynamicsKind::BestResponse;
    c.scripted_order = Some(order.to_vec());
    run_best_response_dynamics(&c, 0)
}

/// Replays `profile` unchanged for every round; only the mechanism's coins
/// vary.
pub fn run_fixed(config: &RunConfig, profile: &Profile, replica: u64) -> Result<Trace> {
    config.validate()?;
    if profile.len() != config.agents.len() {
        return Err(Error::config(format!(
            "profile has {} declarations for {} agents",
            profile.len(),
            config.agents.len()
        )));
    }
    let mut engine = Engine::new(config, replica);
    for t in 1..=config.rounds {
        engine.record(t, Updater::Nobody, profile)?;
    }
    Ok(Trace {
        replica,
        initial: profile.clone(),
        records: engine.records,
        learners: vec![None; profile.len()],
        warmup: 0,
    })
}

pub fn run(config: &RunConfig, replica: u64) -> Result<Trace> {
    match config.kind {
        DynamicsKind::Regret => run_regret_dynamics(config, replica),
        DynamicsKind::BestResponse => run_best_response_dynamics(config, replica),
    }
}

/// All replicas of `config`, in replica order.
pub fn run_replicas(config: &RunConfig) -> Result<Vec<Trace>> {
    config.validate()?;
    (0..config.replicas)
        .into_par_iter()
        .map(|r| run(config, r))
        .collect()
}

/// A periodic tail: from round index `start` (zero-based into the records)
/// the profiles repeat with period `period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub period: usize,
    pub start: usize,
}

/// Smallest period whose repetition covers at least two full periods at the
/// end of the sequence, with the earliest start for that period.
pub fn detect_cycle_in(profiles: &[Profile]) -> Option<Cycle> {
    let n = profiles.len();
    for p in 1..=n / 2 {
        let mut s = n - p;
        while s > 0 && profiles[s - 1] == profiles[s - 1 + p] {
            s -= 1;
        }
        if n - s >= 2 * p {
            return Some(Cycle { period: p, start: s });
        }
    }
    None
}

pub fn detect_cycle(trace: &Trace) -> Option<Cycle> {
    let profiles: Vec<Profile> = trace.profiles().cloned().collect();
    detect_cycle_in(&profiles)
}

/// No best-response agent can strictly improve on its declaration.
pub fn is_equilibrium(profile: &Profile, agents: &[AgentModel], mechanism: &Mechanism) -> Result<bool> {
    for (i, a) in agents.iter().enumerate() {
        if a.behavior.is_byzantine() {
            continue;
        }
        if best_response(i, a, profile, mechanism, true)? != profile[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether any profile the trace visits is an equilibrium.
pub fn visits_equilibrium(trace: &Trace, agents: &[AgentModel], mechanism: &Mechanism) -> Result<bool> {
    let mut seen = std::collections::HashSet::new();
    for p in std::iter::once(&trace.initial).chain(trace.profiles()) {
        if seen.insert(p) && is_equilibrium(p, agents, mechanism)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rounds in which `profile` differs from the previous one, one-based.
pub fn change_rounds(trace: &Trace) -> Vec<usize> {
    let mut prev: &Profile = &trace.initial;
    let mut out = Vec::new();
    for r in &trace.records {
        if &r.profile != prev {
            out.push(r.round);
        }
        prev = &r.profile;
    }
    out
}

#[cfg(test)]
mod tests;
