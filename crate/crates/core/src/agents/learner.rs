use rand::Rng;

use crate::model::{rational_to_f64, Bundle, Rational, Value};
use crate::rng::SimRng;

use super::Regret;

/// Learning-rate schedule for multiplicative weights.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum MwSchedule {
    /// `η_t = √(8 ln K / t)`.
    #[default]
    Standard,
    Constant(f64),
}

impl MwSchedule {
    pub fn eta(self, candidates: usize, t: u64) -> f64 {
        match self {
            MwSchedule::Standard => {
                (8.0 * (candidates.max(1) as f64).ln() / t.max(1) as f64).sqrt()
            }
            MwSchedule::Constant(eta) => eta,
        }
    }
}

/// Perturbation schedule for follow-the-perturbed-leader: in round `t` each
/// candidate gets a uniform integer bonus in `[0, ⌈scale · u_max · √t⌉]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FplSchedule {
    pub scale: f64,
}

impl Default for FplSchedule {
    fn default() -> Self {
        FplSchedule { scale: 1.0 }
    }
}

impl FplSchedule {
    pub fn range(self, u_max: Value, t: u64) -> u64 {
        (self.scale * u_max.ticks() as f64 * (t.max(1) as f64).sqrt()).ceil() as u64
    }
}

/// Running totals of a learner: cumulative counterfactual utility per
/// candidate, realized utility, and multiplicative weights kept as logs.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnerState {
    cumulative: Vec<Rational>,
    realized: Rational,
    log_weights: Vec<f64>,
    round: u64,
}

impl LearnerState {
    pub fn new(candidates: usize) -> Self {
        LearnerState {
            cumulative: vec![Rational::from_integer(0); candidates],
            realized: Rational::from_integer(0),
            log_weights: vec![0.0; candidates],
            round: 0,
        }
    }

    /// Rounds observed so far.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn cumulative(&self) -> &[Rational] {
        &self.cumulative
    }

    pub fn realized(&self) -> Rational {
        self.realized
    }

    /// Current sampling distribution of the multiplicative-weights learner.
    pub fn probabilities(&self) -> Vec<f64> {
        let top = self
            .log_weights
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = self.log_weights.iter().map(|l| (l - top).exp()).collect();
        let total: f64 = w.iter().sum();
        w.into_iter().map(|x| x / total).collect()
    }

    pub fn choose_mw(&self, rng: &mut SimRng) -> usize {
        let p = self.probabilities();
        let mut r: f64 = rng.gen();
        for (k, pk) in p.iter().enumerate() {
            if r < *pk {
                return k;
            }
            r -= pk;
        }
        p.len() - 1
    }

    /// Leader after adding a fresh perturbation in `[0, range]` to each
    /// candidate; ties go to the earlier candidate.
    pub fn choose_fpl(&self, rng: &mut SimRng, range: u64) -> usize {
        let mut best = 0;
        let mut best_score = Rational::from_integer(0);
        for (k, c) in self.cumulative.iter().enumerate() {
            let score = c + Rational::from_integer(rng.gen_range(0..=range) as i128);
            if k == 0 || score > best_score {
                best = k;
                best_score = score;
            }
        }
        best
    }

    /// Records one round of full-information feedback. `mw_step` is
    /// `η_t / u_max` when the weights should move.
    pub fn observe(&mut self, feedback: &[Rational], realized: Rational, mw_step: Option<f64>) {
        self.round += 1;
        self.realized += realized;
        for (k, u) in feedback.iter().enumerate() {
            self.cumulative[k] += u;
            if let Some(step) = mw_step {
                if *u.numer() != 0 {
                    self.log_weights[k] += step * rational_to_f64(u);
                }
            }
        }
    }

    /// Average regret against the best fixed candidate so far.
    pub fn regret(&self, candidates: &[Bundle]) -> Regret {
        if self.round == 0 || self.cumulative.is_empty() {
            return Regret {
                average: Rational::from_integer(0),
                best: Bundle::EMPTY,
            };
        }
        let mut best = 0;
        for k in 1..self.cumulative.len() {
            if self.cumulative[k] > self.cumulative[best] {
                best = k;
            }
        }
        Regret {
            average: (self.cumulative[best] - self.realized)
                / Rational::from_integer(self.round as i128),
            best: candidates[best],
        }
    }
}
