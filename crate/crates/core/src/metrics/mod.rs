//! Welfare and regret analytics over traces, in exact rational arithmetic.

use crate::agents::{AgentModel, Regret};
use crate::algorithms::{optimal_for, TieOrder};
use crate::dynamics::Trace;
use crate::error::{Error, Result};
use crate::mechanisms::{Coin, Mechanism, Threshold};
use crate::model::{
    true_welfare, Allocation, Bundle, Feasibility, Profile, Rational, Valuation, Value,
};

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

fn ticks(v: Value) -> i128 {
    v.ticks() as i128
}

/// Min, median and pass count of one statistic across replicas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicaStats {
    pub runs: usize,
    pub min: Rational,
    /// Lower median.
    pub median: Rational,
    pub passing: usize,
    pub threshold: Rational,
}

impl ReplicaStats {
    pub fn fraction(&self) -> Rational {
        if self.runs == 0 {
            return int(1);
        }
        Rational::new(self.passing as i128, self.runs as i128)
    }
}

/// Replicas pass when their value is at least `threshold`.
pub fn replica_stats(values: &[Rational], threshold: Rational) -> ReplicaStats {
    let mut sorted = values.to_vec();
    sorted.sort();
    ReplicaStats {
        runs: values.len(),
        min: sorted.first().copied().unwrap_or(int(0)),
        median: sorted.get(sorted.len().saturating_sub(1) / 2).copied().unwrap_or(int(0)),
        passing: values.iter().filter(|v| **v >= threshold).count(),
        threshold,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WelfareReport {
    pub rounds: usize,
    /// `(1/T) Σ_t SW(d^t)` in true values.
    pub average: Rational,
    pub optimum: Value,
    /// `average / optimum`; 1 when the optimum is 0.
    pub ratio: Rational,
    pub series: Vec<Value>,
}

/// True welfare of every round, recomputed from the recorded allocations.
pub fn welfare_report(trace: &Trace, types: &[Valuation], optimum: Value) -> Result<WelfareReport> {
    let mut series = Vec::with_capacity(trace.rounds());
    for r in &trace.records {
        if r.outcome.allocation.len() != types.len() {
            return Err(Error::config(format!(
                "round {} allocates to {} agents but the instance has {}",
                r.round,
                r.outcome.allocation.len(),
                types.len()
            )));
        }
        series.push(true_welfare(&r.outcome.allocation, types));
    }
    let rounds = series.len();
    let total: i128 = series.iter().map(|v| ticks(*v)).sum();
    let average = if rounds == 0 {
        int(0)
    } else {
        Rational::new(total, rounds as i128)
    };
    let ratio = if optimum.is_zero() {
        int(1)
    } else {
        average / int(ticks(optimum))
    };
    Ok(WelfareReport {
        rounds,
        average,
        optimum,
        ratio,
        series,
    })
}

/// Welfare measured against the best the regret-minimizing agents could
/// achieve among themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResilienceReport {
    pub welfare: WelfareReport,
    pub byzantine: Vec<usize>,
    /// The restricted optimum's allocation.
    pub honest_optimum: Allocation,
}

pub fn resilience_report(
    trace: &Trace,
    types: &[Valuation],
    byzantine: &[usize],
    feasibility: Feasibility,
) -> Result<ResilienceReport> {
    let honest: Vec<Valuation> = types
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if byzantine.contains(&i) {
                Valuation::zero()
            } else {
                t.clone()
            }
        })
        .collect();
    let (honest_optimum, value) = optimal_for(&honest, feasibility)?;
    Ok(ResilienceReport {
        welfare: welfare_report(trace, types, value)?,
        byzantine: byzantine.to_vec(),
        honest_optimum,
    })
}

/// `Σ_{j ≠ i, S_j ∩ A_i ≠ ∅} d_j(S_j)`.
pub fn rival_sum(profile: &Profile, agent: usize, target: Bundle) -> Value {
    profile
        .iter()
        .enumerate()
        .filter(|&(j, d)| j != agent && d.set().intersects(target))
        .map(|(_, d)| d.amount())
        .sum()
}

/// Per agent, per round: the agent's rivals on `A_i` bid strictly more
/// than `t_i(A_i)/2` in total, or its own bid is at least `t_i(A_i)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `matrix[t][i]`.
    pub matrix: Vec<Vec<bool>>,
    pub fractions: Vec<Rational>,
}

fn membership_by(
    trace: &Trace,
    types: &[Valuation],
    optimal: &Allocation,
    test: impl Fn(i128, i128, i128) -> bool,
) -> Membership {
    let n = types.len();
    let targets: Vec<i128> = (0..n).map(|i| ticks(types[i].value_of(optimal[i]))).collect();
    let matrix: Vec<Vec<bool>> = trace
        .profiles()
        .map(|p| {
            (0..n)
                .map(|i| {
                    let rivals = ticks(rival_sum(p, i, optimal[i]));
                    test(rivals, ticks(p[i].amount()), targets[i])
                })
                .collect()
        })
        .collect();
    let rounds = matrix.len().max(1) as i128;
    let fractions = (0..n)
        .map(|i| Rational::new(matrix.iter().filter(|row| row[i]).count() as i128, rounds))
        .collect();
    Membership { matrix, fractions }
}

/// Membership in `G`: `Σ_{R_i} d_j > t_i(A_i)/2` or `d_i(S_i) ≥ t_i(A_i)/2`.
pub fn g_membership(trace: &Trace, types: &[Valuation], optimal: &Allocation) -> Membership {
    membership_by(trace, types, optimal, |rivals, own, t| {
        2 * rivals > t || 2 * own >= t
    })
}

/// `P1 ∨ P2`: `Σ_{R_i} d_j ≥ t_i(A_i)/2` or `d_i(S_i) ≥ t_i(A_i)/2`.
pub fn lemma6_fractions(trace: &Trace, types: &[Valuation], optimal: &Allocation) -> Membership {
    membership_by(trace, types, optimal, |rivals, own, t| {
        2 * rivals >= t || 2 * own >= t
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegretReport {
    /// `None` for agents that are not learners.
    pub agents: Vec<Option<Regret>>,
}

impl RegretReport {
    pub fn max_regret(&self) -> Option<Rational> {
        self.agents.iter().flatten().map(|r| r.average).max()
    }
}

/// Regret of every learner from the totals kept during the run.
pub fn regret_report(trace: &Trace, agents: &[AgentModel]) -> RegretReport {
    RegretReport {
        agents: trace
            .learners
            .iter()
            .zip(agents)
            .map(|(s, a)| s.as_ref().map(|s| s.regret(a.candidates())))
            .collect(),
    }
}

/// Both sides of the per-agent regret inequality
/// `(1/T) Σ_t (t_i(A(d^t)) + min(t_i(A_i), θ_i(A_i, d^t_{−i}))) ≥ t_i(A_i) − regret`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Check {
    pub lhs: Rational,
    pub rhs: Rational,
    pub slack: Rational,
    pub holds: bool,
}

pub fn lemma2_check(
    trace: &Trace,
    types: &[Valuation],
    optimal: &Allocation,
    agent: usize,
    mechanism: &Mechanism,
    regret: Rational,
) -> Result<Lemma2Check> {
    let target = optimal[agent];
    let t_target = types[agent].value_of(target);
    let mut total: i128 = 0;
    for r in &trace.records {
        total += ticks(types[agent].value_of(r.outcome.allocation[agent]));
        if !target.is_empty() {
            let theta = mechanism.critical_price(&r.profile, agent, target, r.coin)?;
            total += ticks(theta.capped(t_target));
        }
    }
    let lhs = Rational::new(total, trace.rounds().max(1) as i128);
    let rhs = int(ticks(t_target)) - regret;
    Ok(Lemma2Check {
        lhs,
        rhs,
        slack: lhs - rhs,
        holds: lhs >= rhs,
    })
}

/// `Σ_i d_i(A(d))` against `Σ_i θ_i(A_i, d_{−i})` for one profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma3Check {
    pub declared: Value,
    pub thresholds: Value,
}

impl Lemma3Check {
    /// `declared ≥ thresholds / c`.
    pub fn holds(&self, c: Rational) -> bool {
        int(ticks(self.declared)) * c >= int(ticks(self.thresholds))
    }
}

pub fn lemma3_check(mechanism: &Mechanism, profile: &Profile, optimal: &Allocation) -> Result<Lemma3Check> {
    let alloc = mechanism.allocate(profile, Coin::KEEP, TieOrder::Natural);
    let mut thresholds = Value::ZERO;
    for (i, &target) in optimal.iter().enumerate() {
        if target.is_empty() {
            continue;
        }
        match mechanism.critical_price(profile, i, target, Coin::KEEP)? {
            Threshold::Unreachable => {
                return Err(Error::NonMonotone {
                    agent: i,
                    set: target,
                    detail: "no bid wins the target set".into(),
                })
            }
            t => thresholds = thresholds + t.price().unwrap_or(Value::ZERO),
        }
    }
    Ok(Lemma3Check {
        declared: alloc.declared_welfare(profile),
        thresholds,
    })
}

/// Declared welfare of the s-CA mechanism against `Σ_{i∈G} t_i(A_i) / (4(s+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma9Check {
    pub declared: Value,
    pub bound: Rational,
}

impl Lemma9Check {
    pub fn holds(&self) -> bool {
        int(ticks(self.declared)) >= self.bound
    }
}

pub fn lemma9_check(
    profile: &Profile,
    types: &[Valuation],
    optimal: &Allocation,
    cap: u32,
    items: u32,
) -> Lemma9Check {
    let mech = Mechanism::sca(cap, items);
    let alloc = mech.allocate(profile, Coin::KEEP, TieOrder::Natural);
    let in_g: i128 = (0..types.len())
        .filter(|&i| {
            let t = ticks(types[i].value_of(optimal[i]));
            2 * ticks(rival_sum(profile, i, optimal[i])) > t || 2 * ticks(profile[i].amount()) >= t
        })
        .map(|i| ticks(types[i].value_of(optimal[i])))
        .sum();
    Lemma9Check {
        declared: alloc.declared_welfare(profile),
        bound: Rational::new(in_g, 4 * (cap as i128 + 1)),
    }
}

#[cfg(test)]
mod tests;
