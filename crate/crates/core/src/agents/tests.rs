use std::sync::Arc;

use super::*;
use crate::algorithms::GreedySca;
use crate::instances::appendix_c;
use crate::model::rational_to_f64;
use crate::rng::seeded;
use rand::Rng;

fn b(items: &[u32]) -> Bundle {
    Bundle::from_items(items.iter().copied())
}

fn bid(items: &[u32], v: u64) -> Declaration {
    Declaration::bid(b(items), Value(v))
}

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

fn greedy_ma() -> Mechanism {
    Mechanism::over_rule(Arc::new(GreedySca { cap: 2 }), 4)
}

fn appendix_models() -> Vec<AgentModel> {
    appendix_c()
        .types
        .into_iter()
        .enumerate()
        .map(|(i, t)| AgentModel::new(i, t, Behavior::BestResponse))
        .collect()
}

#[test]
fn undominated_bids() {
    let t = &appendix_c().types[0];
    assert_eq!(undominated_bid(t, b(&[0, 1])), bid(&[0, 1], 4));
    assert_eq!(undominated_bid(t, Bundle::EMPTY), Declaration::Empty);
    assert_eq!(undominated_bid(t, b(&[2])), Declaration::Empty);
}

#[test]
fn candidates_start_with_empty() {
    let models = appendix_models();
    assert_eq!(models[1].candidates(), &[Bundle::EMPTY, b(&[0]), b(&[1, 2])]);
    assert_eq!(models[2].candidates(), &[Bundle::EMPTY, b(&[2])]);
}

#[test]
fn agent_two_switches_to_a() {
    let models = appendix_models();
    let p = Profile::new(vec![bid(&[3], 6), bid(&[1, 2], 5), bid(&[2], 4), bid(&[3], 5)]);
    let u = counterfactual_utilities(1, &models[1], &p, &greedy_ma()).unwrap();
    assert_eq!(u, vec![int(0), int(2), int(1)]);
    let d = best_response(1, &models[1], &p, &greedy_ma(), true).unwrap();
    assert_eq!(d, bid(&[0], 2));
}

#[test]
fn agent_one_switches_to_ab() {
    let models = appendix_models();
    let p = Profile::new(vec![bid(&[3], 6), bid(&[0], 2), bid(&[2], 4), bid(&[3], 5)]);
    let d = best_response(0, &models[0], &p, &greedy_ma(), true).unwrap();
    assert_eq!(d, bid(&[0, 1], 4));
}

#[test]
fn keeps_current_on_ties() {
    let models = appendix_models();
    // agent 3 alone on {c}: bidding it is worth 4, empty keeps nothing
    let p = Profile::empty(4);
    assert_eq!(
        best_response(2, &models[2], &p, &greedy_ma(), true).unwrap(),
        bid(&[2], 4)
    );
    // agent 3 cannot win {c} against a higher bid: stays empty
    let p = Profile::empty(4).with(1, bid(&[1, 2], 5));
    assert_eq!(
        best_response(2, &models[2], &p, &greedy_ma(), true).unwrap(),
        Declaration::Empty
    );
    // already bidding {c} with nothing better: keeps it even though Empty ties
    let p = Profile::empty(4).with(1, bid(&[1, 2], 5)).with(2, bid(&[2], 4));
    assert_eq!(
        best_response(2, &models[2], &p, &greedy_ma(), true).unwrap(),
        bid(&[2], 4)
    );
    assert_eq!(
        best_response(2, &models[2], &p, &greedy_ma(), false).unwrap(),
        Declaration::Empty
    );
}

#[test]
fn sole_bidder_keeps_full_value() {
    let m = AgentModel::new(0, appendix_c().types[0].clone(), Behavior::BestResponse);
    let p = Profile::empty(1);
    let u = counterfactual_utilities(0, &m, &p, &greedy_ma()).unwrap();
    assert_eq!(u, vec![int(0), int(6), int(4)]);
}

#[test]
fn byzantine_never_overbids_and_is_reproducible() {
    let models = appendix_models();
    let draw = |seed| {
        let mut rng = seeded(seed);
        (0..500)
            .map(|k| byzantine_bid(&models[k % 4], &mut rng))
            .collect::<Vec<_>>()
    };
    let bids = draw(3);
    assert_eq!(bids, draw(3));
    for (k, d) in bids.iter().enumerate() {
        assert!(d.amount() <= models[k % 4].valuation.value_of(d.set()));
    }
    let zero = AgentModel::new(0, Valuation::zero(), Behavior::Byzantine(ByzantinePolicy::Uniform));
    let mut rng = seeded(1);
    assert!((0..50).all(|_| byzantine_bid(&zero, &mut rng).is_empty()));
}

#[test]
fn regret_formula() {
    let cands = [Bundle::EMPTY, b(&[0])];
    let mut s = LearnerState::new(2);
    s.observe(&[int(0), int(5)], int(0), None);
    assert_eq!(s.regret(&cands).average, int(5));
    assert_eq!(s.regret(&cands).best, b(&[0]));
    let mut s = LearnerState::new(2);
    s.observe(&[int(0), int(5)], int(5), None);
    assert_eq!(s.regret(&cands).average, int(0));
}

#[test]
fn external_regret_of_hindsight_best_is_zero() {
    let models = appendix_models();
    let p = Profile::new(vec![bid(&[3], 6), bid(&[1, 2], 5), bid(&[2], 4), bid(&[3], 5)]);
    let hist = vec![(bid(&[0], 2), p.clone()); 3];
    let r = external_regret(1, &models[1], &hist, &greedy_ma()).unwrap();
    assert_eq!(r.average, int(0));
    let hist = vec![(bid(&[1, 2], 5), p)];
    let r = external_regret(1, &models[1], &hist, &greedy_ma()).unwrap();
    assert_eq!(r.average, int(1));
    assert_eq!(r.best, b(&[0]));
}

#[test]
fn mw_first_round_is_uniform() {
    let s = LearnerState::new(4);
    assert!(s.probabilities().iter().all(|p| (p - 0.25).abs() < 1e-12));
    let mut counts = [0usize; 4];
    for seed in 0..4000 {
        counts[s.choose_mw(&mut seeded(seed))] += 1;
    }
    assert!(counts.iter().all(|&c| (850..1150).contains(&c)), "{counts:?}");
}

#[test]
fn mw_concentrates_on_the_paying_candidate() {
    let mut s = LearnerState::new(3);
    let mut last = 0.0;
    for t in 1..=400u64 {
        let step = MwSchedule::Standard.eta(3, t) / 10.0;
        s.observe(&[int(0), int(10), int(0)], int(0), Some(step));
        let p = s.probabilities()[1];
        assert!(p >= last);
        last = p;
    }
    assert!(last > 0.99);
}

#[test]
fn mw_with_zero_rate_never_moves() {
    let mut s = LearnerState::new(3);
    for _ in 0..50 {
        s.observe(&[int(0), int(10), int(3)], int(0), Some(MwSchedule::Constant(0.0).eta(3, 1)));
    }
    assert!(s.probabilities().iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-12));
}

#[test]
fn fpl_tie_and_dominance() {
    let s = LearnerState::new(3);
    assert_eq!(s.choose_fpl(&mut seeded(0), 0), 0);
    let mut s = LearnerState::new(3);
    s.observe(&[int(0), int(0), int(100)], int(0), None);
    let mut rng = seeded(9);
    assert!((0..200).all(|_| s.choose_fpl(&mut rng, 99) == 2));
}

/// Two candidates whose payoffs alternate between 0 and 1 each round.
fn alternating_regret(t_max: u64, seed: u64, mw: bool) -> f64 {
    let cands = [b(&[0]), b(&[1])];
    let mut s = LearnerState::new(2);
    let mut rng = seeded(seed);
    for t in 1..=t_max {
        let k = if mw {
            s.choose_mw(&mut rng)
        } else {
            s.choose_fpl(&mut rng, FplSchedule::default().range(Value(1), t))
        };
        let fb = if t % 2 == 0 { [int(1), int(0)] } else { [int(0), int(1)] };
        let step = mw.then(|| MwSchedule::Standard.eta(2, t));
        s.observe(&fb, fb[k], step);
    }
    rational_to_f64(&s.regret(&cands).average)
}

#[test]
fn fpl_regret_is_small() {
    let r = alternating_regret(10_000, 4, false);
    assert!(r <= 3.0 / (10_000f64).sqrt(), "{r}");
}

/// Candidate 1 pays 1 with probability 0.6, candidate 0 with probability 0.4.
fn noisy_regret(t_max: u64, seed: u64) -> f64 {
    let cands = [b(&[0]), b(&[1])];
    let mut s = LearnerState::new(2);
    let mut rng = seeded(seed);
    let mut env = seeded(seed + 1000);
    for t in 1..=t_max {
        let k = s.choose_mw(&mut rng);
        let fb = [int(env.gen_bool(0.4) as i128), int(env.gen_bool(0.6) as i128)];
        s.observe(&fb, fb[k], Some(MwSchedule::Standard.eta(2, t)));
    }
    rational_to_f64(&s.regret(&cands).average)
}

#[test]
fn mw_regret_shrinks_with_horizon() {
    assert!(alternating_regret(10_000, 1, true) < 0.05);
    let median = |t| {
        let mut v: Vec<f64> = (0..9).map(|s| noisy_regret(t, s)).collect();
        v.sort_by(f64::total_cmp);
        v[4]
    };
    let (a, b, c) = (median(100), median(1_000), median(10_000));
    assert!(a >= b && b >= c, "{a} {b} {c}");
}
