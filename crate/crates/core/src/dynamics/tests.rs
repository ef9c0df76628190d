use std::sync::Arc;

use super::*;
use crate::agents::{ByzantinePolicy, MwSchedule};
use crate::algorithms::GreedySca;
use crate::instances::appendix_c;
use crate::model::{Bundle, Declaration};

fn b(items: &[u32]) -> Bundle {
    Bundle::from_items(items.iter().copied())
}

fn bid(items: &[u32], v: u64) -> Declaration {
    Declaration::bid(b(items), Value(v))
}

fn greedy_ma() -> Mechanism {
    Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), 4)
}

fn models(types: &[Valuation], behavior: Behavior) -> Vec<AgentModel> {
    types
        .iter()
        .enumerate()
        .map(|(i, t)| AgentModel::new(i, t.clone(), behavior))
        .collect()
}

fn appendix_br(rounds: usize) -> RunConfig {
    let inst = appendix_c();
    RunConfig::new(
        greedy_ma(),
        models(&inst.types, Behavior::BestResponse),
        DynamicsKind::BestResponse,
        rounds,
    )
}

fn start_state() -> Profile {
    Profile::new(vec![bid(&[3], 6), bid(&[1, 2], 5), bid(&[2], 4), bid(&[3], 5)])
}

#[test]
fn scripted_order_reaches_the_cycle_start() {
    let trace = scripted_order_mode(&appendix_br(5), &[2, 3, 0, 1, 0]).unwrap();
    assert_eq!(trace.records[4].profile, start_state());
}

#[test]
fn alternating_updates_return_to_start() {
    let order = [2, 3, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0];
    let trace = scripted_order_mode(&appendix_br(order.len()), &order).unwrap();
    let p: Vec<_> = trace.profiles().cloned().collect();
    assert_eq!(p[5], start_state().with(1, bid(&[0], 2)));
    assert_eq!(p[6], start_state().with(1, bid(&[0], 2)).with(0, bid(&[0, 1], 4)));
    assert_eq!(p[7], start_state().with(0, bid(&[0, 1], 4)));
    assert_eq!(p[8], start_state());
    assert_eq!(p[12], start_state());
    // round 4 already shows the state that precedes the start in the cycle
    assert_eq!(p[3], p[7]);
    assert_eq!(detect_cycle(&trace), Some(Cycle { period: 4, start: 3 }));
}

#[test]
fn only_scripted_agents_update() {
    let inst = appendix_c();
    let cfg = RunConfig::new(
        greedy_ma(),
        models(&inst.types[..2], Behavior::BestResponse),
        DynamicsKind::BestResponse,
        10,
    );
    let trace = scripted_order_mode(&cfg, &[0]).unwrap();
    assert!(trace.records.iter().all(|r| r.updater == Updater::Agent(0)));
    assert!(trace.profiles().all(|p| p[1].is_empty()));
    assert!(scripted_order_mode(&cfg, &[]).is_err());
    assert!(scripted_order_mode(&cfg, &[2]).is_err());
}

#[test]
fn zero_rounds_rejected() {
    assert!(appendix_br(0).validate().is_err());
}

#[test]
fn dropping_assumptions_needs_lottery() {
    let mut cfg = appendix_br(10);
    cfg.mechanism = Mechanism::sca(2, 4);
    cfg.assumptions.empty_start = false;
    assert!(cfg.validate().is_err());
    cfg.mechanism = Mechanism::sca(2, 4).with_lottery(Rational::new(1, 20)).unwrap();
    cfg.validate().unwrap();
    let trace = run(&cfg, 0).unwrap();
    assert!(trace.warmup >= 1);
}

#[test]
fn learners_rejected_in_best_response() {
    let inst = appendix_c();
    let cfg = RunConfig::new(
        greedy_ma(),
        models(&inst.types, Behavior::RegretMw(MwSchedule::Standard)),
        DynamicsKind::BestResponse,
        10,
    );
    assert!(cfg.validate().is_err());
}

#[test]
fn lone_agent_settles_immediately() {
    let t = Valuation::new([(b(&[0]), Value(3)), (b(&[1]), Value(7))]);
    let cfg = RunConfig::new(
        Mechanism::sca(2, 2),
        models(&[t], Behavior::BestResponse),
        DynamicsKind::BestResponse,
        20,
    );
    let trace = run(&cfg, 0).unwrap();
    assert!(trace.profiles().all(|p| p[0] == bid(&[1], 7)));
    assert_eq!(detect_cycle(&trace).map(|c| c.period), Some(1));
    assert_eq!(change_rounds(&trace), vec![1]);
}

#[test]
fn deterministic_and_single_step() {
    let mut cfg = appendix_br(300);
    cfg.seed = 17;
    let a = run(&cfg, 2).unwrap();
    assert_eq!(a, run(&cfg, 2).unwrap());
    assert_ne!(a, run(&cfg, 3).unwrap());
    let mut prev = &a.initial;
    for r in &a.records {
        let diffs = (0..4).filter(|&i| prev[i] != r.profile[i]).count();
        assert!(diffs <= 1);
        prev = &r.profile;
    }
    assert!(a.replays(&cfg.mechanism).unwrap());
}

#[test]
fn appendix_states_are_never_equilibria() {
    let cfg = appendix_br(10);
    assert!(!is_equilibrium(&start_state(), &cfg.agents, &cfg.mechanism).unwrap());
}

#[test]
fn cycle_detection_edge_cases() {
    let p = |v: u64| Profile::new(vec![bid(&[0], v)]);
    let novel: Vec<Profile> = (1..20).map(p).collect();
    assert_eq!(detect_cycle_in(&novel), None);
    let mut tail = novel.clone();
    tail.extend([p(50), p(50), p(50)]);
    assert_eq!(detect_cycle_in(&tail), Some(Cycle { period: 1, start: 19 }));
    assert_eq!(detect_cycle_in(&[]), None);
}

#[test]
fn first_regret_round_is_uniform() {
    let t = Valuation::new([(b(&[0]), Value(3)), (b(&[1]), Value(7)), (b(&[0, 1]), Value(8))]);
    let mut counts = [0usize; 4];
    for seed in 0..2000 {
        let mut cfg = RunConfig::new(
            Mechanism::sca(2, 2),
            models(&[t.clone()], Behavior::RegretMw(MwSchedule::Standard)),
            DynamicsKind::Regret,
            1,
        );
        cfg.seed = seed;
        let trace = run(&cfg, 0).unwrap();
        let set = trace.records[0].profile[0].set();
        let k = [Bundle::EMPTY, b(&[0]), b(&[1]), b(&[0, 1])]
            .iter()
            .position(|&c| c == set)
            .unwrap();
        counts[k] += 1;
    }
    assert!(counts.iter().all(|&c| (400..600).contains(&c)), "{counts:?}");
}

#[test]
fn lone_learner_finds_its_best_atom() {
    let t = Valuation::new([(b(&[0]), Value(3)), (b(&[1]), Value(7))]);
    let cfg = RunConfig::new(
        Mechanism::sca(2, 2),
        models(&[t], Behavior::RegretMw(MwSchedule::Standard)),
        DynamicsKind::Regret,
        2000,
    );
    let trace = run(&cfg, 0).unwrap();
    let tail = &trace.records[1000..];
    assert!(tail.iter().all(|r| r.true_welfare == Value(7)));
    let state = trace.learners[0].as_ref().unwrap();
    assert_eq!(state.round(), 2000);
}

#[test]
fn byzantine_agents_never_overbid_in_runs() {
    let inst = appendix_c();
    let mut agents = models(&inst.types, Behavior::RegretMw(MwSchedule::Standard));
    agents[3].behavior = Behavior::Byzantine(ByzantinePolicy::Uniform);
    let cfg = RunConfig::new(greedy_ma(), agents, DynamicsKind::Regret, 200);
    let trace = run(&cfg, 0).unwrap();
    for r in &trace.records {
        let d = r.profile[3];
        assert!(d.amount() <= inst.types[3].value_of(d.set()));
    }
    assert!(trace.learners[3].is_none());
}

#[test]
fn replicas_are_ordered() {
    let mut cfg = appendix_br(50);
    cfg.replicas = 3;
    let traces = run_replicas(&cfg).unwrap();
    assert_eq!(traces.iter().map(|t| t.replica).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(traces[1], run(&cfg, 1).unwrap());
}
