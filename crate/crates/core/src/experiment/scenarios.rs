use std::path::Path;

use super::{parse_experiment, Experiment, Origin, Overrides};
use crate::error::{Error, Result};

/// Built-in scenarios: name, one-line description, source.
pub const SCENARIOS: &[(&str, &str, &str)] = &[
    (
        "appendix-c-cycle",
        "scripted best responses on the greedy mechanism revisit a 4-cycle",
        include_str!("../../scenarios/appendix-c-cycle.toml"),
    ),
    (
        "appendix-c-random",
        "random-order best responses from the truthful single-minded start never settle",
        include_str!("../../scenarios/appendix-c-random.toml"),
    ),
    (
        "section-3-3",
        "a rule that is not loser-independent stuck at a poor zero-regret profile",
        include_str!("../../scenarios/section-3-3.toml"),
    ),
    (
        "random-sca",
        "best-response dynamics on the s-CA mechanism, small random instances",
        include_str!("../../scenarios/random-sca.toml"),
    ),
    (
        "random-ca",
        "best-response dynamics on the CA mechanism, small random instances",
        include_str!("../../scenarios/random-ca.toml"),
    ),
    (
        "byzantine-mix",
        "multiplicative-weights learners with one uniformly random bidder",
        include_str!("../../scenarios/byzantine-mix.toml"),
    ),
    (
        "regret-theorem-3",
        "multiplicative-weights learners on the greedy mechanism, 20 instances",
        include_str!("../../scenarios/regret-theorem-3.toml"),
    ),
    (
        "best-response-theorem-10",
        "best responses on the s-CA mechanism, 20 instances x 50 seeds",
        include_str!("../../scenarios/best-response-theorem-10.toml"),
    ),
    (
        "ca-theorem-11",
        "best responses on the CA mechanism, 20 instances x 50 seeds",
        include_str!("../../scenarios/ca-theorem-11.toml"),
    ),
];

const INSTANCES: &[(&str, &str)] = &[(
    "appendix_c.instance",
    include_str!("../../scenarios/appendix_c.instance"),
)];

pub(crate) fn embedded_instance(name: &str) -> Option<&'static str> {
    INSTANCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn list_scenarios() -> Vec<&'static str> {
    SCENARIOS.iter().map(|(n, _, _)| *n).collect()
}

pub fn scenario_source(name: &str) -> Result<&'static str> {
    SCENARIOS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, s)| *s)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn load_scenario(name: &str, overrides: &Overrides) -> Result<Experiment> {
    let src = scenario_source(name)?;
    parse_experiment(src, Path::new(&format!("{name}.toml")), Origin::Embedded, overrides)
}
