use std::sync::Arc;

use super::*;
use crate::agents::{AgentModel, Behavior, MwSchedule};
use crate::algorithms::GreedySca;
use crate::dynamics::{run, DynamicsKind, RoundRecord, RunConfig, Updater};
use crate::instances::appendix_c;
use crate::model::Declaration;

fn b(items: &[u32]) -> Bundle {
    Bundle::from_items(items.iter().copied())
}

fn bid(items: &[u32], v: u64) -> Declaration {
    Declaration::bid(b(items), Value(v))
}

fn greedy_ma() -> Mechanism {
    Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), 4)
}

/// A trace that plays `profile` under the greedy mechanism every round.
fn constant_trace(profile: &Profile, rounds: usize) -> Trace {
    let outcome = greedy_ma().outcome(profile, Coin::KEEP).unwrap();
    let records = (1..=rounds)
        .map(|round| RoundRecord {
            round,
            updater: Updater::All,
            profile: profile.clone(),
            coin: Coin::KEEP,
            outcome: outcome.clone(),
            declared_welfare: outcome.allocation.declared_welfare(profile),
            true_welfare: Value::ZERO,
        })
        .collect();
    Trace {
        replica: 0,
        initial: Profile::empty(profile.len()),
        records,
        learners: vec![None; profile.len()],
        warmup: 0,
    }
}

fn optimum() -> Allocation {
    optimal_for(&appendix_c().types, Feasibility::Capped(2)).unwrap().0
}

fn optimal_profile() -> Profile {
    Profile::new(vec![bid(&[0, 1], 4), Declaration::Empty, bid(&[2], 4), bid(&[3], 5)])
}

#[test]
fn optimum_every_round_has_ratio_one() {
    let types = appendix_c().types;
    let r = welfare_report(&constant_trace(&optimal_profile(), 7), &types, Value(13)).unwrap();
    assert_eq!(r.ratio, int(1));
    assert_eq!(r.average, int(13));
    assert_eq!(r.series, vec![Value(13); 7]);
}

#[test]
fn empty_rounds_have_ratio_zero() {
    let types = appendix_c().types;
    let r = welfare_report(&constant_trace(&Profile::empty(4), 3), &types, Value(13)).unwrap();
    assert_eq!(r.ratio, int(0));
    assert!(welfare_report(&constant_trace(&Profile::empty(4), 3), &types[..2], Value(13)).is_err());
}

#[test]
fn replica_statistics() {
    let v = [Rational::new(1, 2), int(0), int(1), Rational::new(1, 4)];
    let s = replica_stats(&v, Rational::new(1, 4));
    assert_eq!((s.min, s.median, s.passing), (int(0), Rational::new(1, 4), 3));
    assert_eq!(s.fraction(), Rational::new(3, 4));
}

#[test]
fn membership_clauses() {
    let types = vec![Valuation::zero(), Valuation::single_minded(b(&[0]), Value(10))];
    let optimal = Allocation::new(vec![Bundle::EMPTY, b(&[0])]);
    let run_one = |p: Profile| {
        let t = constant_trace(&p, 1);
        (g_membership(&t, &types, &optimal).matrix[0].clone(), lemma6_fractions(&t, &types, &optimal).matrix[0].clone())
    };
    // zero target: always in
    let (g, l6) = run_one(Profile::empty(2));
    assert_eq!((g[0], l6[0]), (true, true));
    assert_eq!((g[1], l6[1]), (false, false));
    // own bid exactly half
    let (g, _) = run_one(Profile::new(vec![Declaration::Empty, bid(&[0], 5)]));
    assert!(g[1]);
    // rivals exactly half: in P1 but not in G
    let (g, l6) = run_one(Profile::new(vec![bid(&[0], 5), Declaration::Empty]));
    assert_eq!((g[1], l6[1]), (false, true));
    let (g, _) = run_one(Profile::new(vec![bid(&[0], 6), Declaration::Empty]));
    assert!(g[1]);
}

#[test]
fn resilience_without_byzantines_matches_welfare() {
    let types = appendix_c().types;
    let t = constant_trace(&optimal_profile(), 4);
    let r = resilience_report(&t, &types, &[], Feasibility::Capped(2)).unwrap();
    assert_eq!(r.welfare, welfare_report(&t, &types, Value(13)).unwrap());
    let all = resilience_report(&t, &types, &[0, 1, 2, 3], Feasibility::Capped(2)).unwrap();
    assert_eq!(all.welfare.optimum, Value::ZERO);
    assert_eq!(all.welfare.ratio, int(1));
}

#[test]
fn lemma2_for_a_winner_of_its_optimal_set() {
    let types = appendix_c().types;
    let t = constant_trace(&optimal_profile(), 5);
    for i in 0..4 {
        let c = lemma2_check(&t, &types, &optimum(), i, &greedy_ma(), int(0)).unwrap();
        assert!(c.holds, "agent {i}: {c:?}");
    }
}

#[test]
fn lemma2_on_a_learning_run() {
    let inst = appendix_c();
    let agents: Vec<AgentModel> = inst
        .types
        .iter()
        .enumerate()
        .map(|(i, t)| AgentModel::new(i, t.clone(), Behavior::RegretMw(MwSchedule::Standard)))
        .collect();
    let cfg = RunConfig::new(greedy_ma(), agents.clone(), DynamicsKind::Regret, 500);
    let trace = run(&cfg, 0).unwrap();
    let regrets = regret_report(&trace, &agents);
    for i in 0..4 {
        let r = regrets.agents[i].unwrap().average;
        let c = lemma2_check(&trace, &inst.types, &optimum(), i, &greedy_ma(), r).unwrap();
        assert!(c.holds, "agent {i}: {c:?}");
    }
}

#[test]
fn lemma3_on_the_cycle_start() {
    let p = Profile::new(vec![bid(&[3], 6), bid(&[1, 2], 5), bid(&[2], 4), bid(&[3], 5)]);
    let c = lemma3_check(&greedy_ma(), &p, &optimum()).unwrap();
    assert_eq!(c.declared, Value(11));
    assert!(c.holds(int(3)));
}

#[test]
fn lemma9_on_a_separated_profile() {
    let types = appendix_c().types;
    let c = lemma9_check(&optimal_profile(), &types, &optimum(), 2, 4);
    assert_eq!(c.declared, Value(13));
    assert_eq!(c.bound, Rational::new(13, 12));
    assert!(c.holds());
}
