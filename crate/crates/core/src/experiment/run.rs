use std::fs;
use std::path::Path;

use rayon::prelude::*;

use super::export::{rat, write_trace_csv, Check, InstanceSummary, ReplicaRow, RowExact, Summary};
use super::{Acceptance, Bound, Experiment};
use crate::agents::external_regret;
use crate::algorithms::{ceil_sqrt, optimal_for};
use crate::dynamics::{detect_cycle, is_equilibrium, visits_equilibrium, run_fixed, run_replicas, RunConfig, Trace};
use crate::error::{Error, Result};
use crate::mechanisms::MechanismKind;
use crate::metrics::{g_membership, lemma2_check, lemma6_fractions, regret_report, replica_stats, resilience_report, welfare_report};
use crate::model::{rational_to_f64, Allocation, Profile, Rational, Value};

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// The welfare-ratio threshold a replica must reach, if any.
fn ratio_threshold(acc: &Acceptance, config: &RunConfig) -> Result<Option<Rational>> {
    if acc.min_ratio.is_some() {
        return Ok(acc.min_ratio);
    }
    let mech = &config.mechanism;
    Ok(match acc.bound {
        None => None,
        Some(Bound::Regret) => {
            let MechanismKind::Rule(rule) = mech.kind() else {
                return Err(Error::config("the regret bound needs a rule-based mechanism; give min_ratio instead"));
            };
            Some(int(1) / (rule.approximation() + int(1)) - acc.slack)
        }
        Some(Bound::BestResponseSca) => {
            let s = mech
                .feasibility()
                .cap()
                .ok_or_else(|| Error::config("best-response-sca needs a capped mechanism"))?;
            Some(Rational::new(1, 8 * (s as i128 + 1)) - acc.epsilon)
        }
        Some(Bound::BestResponseCa) => {
            let r = ceil_sqrt(mech.items()) as i128;
            Some(Rational::new(1, 16 * (r + 1)) - acc.epsilon)
        }
    })
}

/// Metrics of one trace against the instance optimum.
pub fn analyze_trace(
    exp: &Experiment,
    index: usize,
    trace: &Trace,
    optimal: &Allocation,
    optimum: Value,
) -> Result<ReplicaRow> {
    let config = &exp.runs[index];
    let types = config.types();
    let acc = &exp.acceptance;
    let welfare = welfare_report(trace, &types, optimum)?;
    let regrets: Vec<Option<Rational>> = match &exp.fixed {
        Some(profiles) => {
            let p: &Profile = &profiles[index];
            config
                .agents
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if a.behavior.is_byzantine() {
                        return Ok(None);
                    }
                    let r = external_regret(i, a, &[(p[i], p.clone())], &config.mechanism)?;
                    Ok(Some(r.average))
                })
                .collect::<Result<_>>()?
        }
        None => regret_report(trace, &config.agents)
            .agents
            .iter()
            .map(|r| r.map(|r| r.average))
            .collect(),
    };
    let max_regret = regrets.iter().flatten().max().copied();
    let g = g_membership(trace, &types, optimal);
    let separated = match config.mechanism.kind() {
        MechanismKind::Rule(_) => None,
        _ if !acc.require_separated => None,
        _ => Some(
            trace.records[trace.warmup.min(trace.rounds())..]
                .iter()
                .all(|r| config.mechanism.separated(&r.profile, &types).iter().all(|&s| s)),
        ),
    };
    let lemma6 = acc.min_lemma6_fraction.map(|_| {
        lemma6_fractions(trace, &types, optimal)
            .fractions
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| !exp.byzantine.contains(&i))
            .map(|(_, f)| f)
            .min()
            .unwrap_or(int(1))
    });
    let lemma2 = if acc.require_lemma2 {
        let report = regret_report(trace, &config.agents);
        let mut all = true;
        for (i, r) in report.agents.iter().enumerate() {
            if let Some(r) = r {
                all &= lemma2_check(trace, &types, optimal, i, &config.mechanism, r.average)?.holds;
            }
        }
        Some(all)
    } else {
        None
    };
    let converged = match trace.records.last() {
        Some(last) => is_equilibrium(&last.profile, &config.agents, &config.mechanism)?,
        None => true,
    };
    let equilibrium_visited = if acc.forbid_equilibria {
        Some(visits_equilibrium(trace, &config.agents, &config.mechanism)?)
    } else {
        None
    };
    Ok(ReplicaRow {
        instance: index,
        replica: trace.replica,
        rounds: welfare.rounds,
        average_welfare: rat(&welfare.average),
        optimum: optimum.ticks(),
        ratio: rat(&welfare.ratio),
        ratio_decimal: rational_to_f64(&welfare.ratio),
        max_regret: max_regret.as_ref().map(rat),
        regret: regrets.iter().map(|r| r.as_ref().map(rat)).collect(),
        g_fractions: g.fractions.iter().map(rat).collect(),
        separated,
        lemma6_min_fraction: lemma6.as_ref().map(rat),
        lemma2_holds: lemma2,
        cycle_period: detect_cycle(trace).map(|c| c.period),
        converged,
        equilibrium_visited,
        exact: RowExact {
            ratio: welfare.ratio,
            max_regret,
            lemma6,
        },
    })
}

fn traces_for(exp: &Experiment, index: usize) -> Result<Vec<Trace>> {
    let config = &exp.runs[index];
    match &exp.fixed {
        Some(profiles) => (0..config.replicas)
            .into_par_iter()
            .map(|r| run_fixed(config, &profiles[index], r))
            .collect(),
        None => run_replicas(config),
    }
}

fn optimum_for(exp: &Experiment, index: usize, trace: Option<&Trace>) -> Result<(Allocation, Value)> {
    let config = &exp.runs[index];
    let types = config.types();
    let feasibility = config.mechanism.feasibility();
    match trace {
        Some(t) if !exp.byzantine.is_empty() => {
            let r = resilience_report(t, &types, &exp.byzantine, feasibility)?;
            Ok((r.honest_optimum, r.welfare.optimum))
        }
        _ => optimal_for(&types, feasibility),
    }
}

fn checks(exp: &Experiment, rows: &[ReplicaRow], thresholds: &[Option<Rational>]) -> Vec<Check> {
    let acc = &exp.acceptance;
    let mut out = Vec::new();
    if thresholds.iter().any(Option::is_some) {
        let passing = rows
            .iter()
            .filter(|r| thresholds[r.instance].map_or(true, |t| r.ratio() >= t))
            .count();
        let ratios: Vec<Rational> = rows.iter().map(ReplicaRow::ratio).collect();
        let lowest = thresholds.iter().flatten().min().copied().unwrap_or(int(0));
        let stats = replica_stats(&ratios, lowest);
        let fraction = if rows.is_empty() {
            int(1)
        } else {
            Rational::new(passing as i128, rows.len() as i128)
        };
        out.push(Check {
            name: "welfare_ratio".into(),
            passed: fraction >= acc.min_pass_fraction,
            detail: format!(
                "{passing}/{} replicas at or above threshold (lowest {:.4}); min ratio {:.4}, median {:.4}; need fraction ≥ {}",
                rows.len(),
                rational_to_f64(&lowest),
                rational_to_f64(&stats.min),
                rational_to_f64(&stats.median),
                rat(&acc.min_pass_fraction)
            ),
        });
    }
    if let Some(bound) = acc.max_regret {
        let worst = rows.iter().filter_map(ReplicaRow::max_regret_exact).max();
        out.push(Check {
            name: "max_regret".into(),
            passed: worst.map_or(true, |w| w <= bound),
            detail: format!(
                "largest average regret {} against bound {}",
                worst.as_ref().map_or("none".into(), rat),
                rat(&bound)
            ),
        });
    }
    if acc.require_separated {
        let checked: Vec<bool> = rows.iter().filter_map(|r| r.separated).collect();
        out.push(Check {
            name: "separated".into(),
            passed: checked.iter().all(|&s| s),
            detail: format!(
                "{}/{} traces separated after warmup",
                checked.iter().filter(|&&s| s).count(),
                checked.len()
            ),
        });
    }
    if let Some(min) = acc.min_lemma6_fraction {
        let measured: Vec<Rational> = rows.iter().filter_map(ReplicaRow::lemma6_exact).collect();
        let stats = replica_stats(&measured, min);
        out.push(Check {
            name: "rival_or_own_fraction".into(),
            passed: stats.fraction() >= acc.min_pass_fraction,
            detail: format!(
                "{}/{} replicas with every agent's fraction ≥ {}; smallest {:.4}",
                stats.passing,
                stats.runs,
                rat(&min),
                rational_to_f64(&stats.min)
            ),
        });
    }
    if acc.require_lemma2 {
        let held = rows.iter().filter(|r| r.lemma2_holds == Some(true)).count();
        out.push(Check {
            name: "per_agent_threshold_inequality".into(),
            passed: held == rows.len(),
            detail: format!("{held}/{} traces satisfy it for every learner", rows.len()),
        });
    }
    if let Some(p) = acc.expect_period {
        let seen: Vec<Option<usize>> = rows.iter().map(|r| r.cycle_period).collect();
        out.push(Check {
            name: "cycle_period".into(),
            passed: seen.iter().all(|&s| s == Some(p)),
            detail: format!("periods {seen:?}, expected {p}"),
        });
    }
    if let Some(c) = acc.expect_converged {
        let hits = rows.iter().filter(|r| r.converged == c).count();
        out.push(Check {
            name: "converged".into(),
            passed: hits == rows.len(),
            detail: format!("{hits}/{} final profiles with equilibrium = {c}", rows.len()),
        });
    }
    if acc.forbid_equilibria {
        let clean = rows.iter().filter(|r| r.equilibrium_visited == Some(false)).count();
        out.push(Check {
            name: "no_equilibrium_visited".into(),
            passed: clean == rows.len(),
            detail: format!("{clean}/{} traces never visit an equilibrium", rows.len()),
        });
    }
    if let Some(x) = acc.expect_ratio {
        let seen: Vec<&str> = rows.iter().map(|r| r.ratio.as_str()).collect();
        out.push(Check {
            name: "exact_ratio".into(),
            passed: rows.iter().all(|r| r.ratio() == x),
            detail: format!("ratios {seen:?}, expected {}", rat(&x)),
        });
    }
    out
}

/// Runs every instance and replica, writes traces and `summary.json` to
/// `out_dir` when given, and evaluates the acceptance checks.
pub fn run_experiment(exp: &Experiment, out_dir: Option<&Path>) -> Result<Summary> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::new();
    let mut instances = Vec::new();
    let mut thresholds = Vec::new();
    for (k, config) in exp.runs.iter().enumerate() {
        thresholds.push(ratio_threshold(&exp.acceptance, config)?);
        let traces = traces_for(exp, k)?;
        let (optimal, optimum) = optimum_for(exp, k, traces.first())?;
        let analyzed: Vec<ReplicaRow> = traces
            .par_iter()
            .map(|t| analyze_trace(exp, k, t, &optimal, optimum))
            .collect::<Result<_>>()?;
        if let Some(dir) = out_dir {
            for t in &traces {
                write_trace_csv(&dir.join(format!("trace-i{k}-r{}.csv", t.replica)), t)?;
            }
        }
        rows.extend(analyzed);
        instances.push(InstanceSummary {
            index: k,
            agents: config.agents.len(),
            items: config.mechanism.items(),
            mechanism: config.mechanism.name(),
            optimum: optimum.ticks(),
        });
    }
    let checks = checks(exp, &rows, &thresholds);
    let summary = Summary {
        name: exp.name.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        instances,
        replicas: rows,
    };
    if let Some(dir) = out_dir {
        summary.write_json(&dir.join("summary.json"))?;
    }
    Ok(summary)
}
