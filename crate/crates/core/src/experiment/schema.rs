//! On-disk formats for instances and experiments (TOML).

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use toml::Spanned;

/// An item named by bit index or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ItemRef {
    Index(u32),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub items: Spanned<Vec<ItemRef>>,
    pub value: Spanned<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub id: Spanned<i64>,
    #[serde(default)]
    pub atoms: Vec<AtomEntry>,
}

/// ```toml
/// m = 4
/// items = ["a", "b", "c", "d"]
/// s = 2
///
/// [[agents]]
/// id = 1
/// atoms = [{ items = ["a", "b"], value = 4 }, { items = ["d"], value = 6 }]
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub m: Spanned<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Spanned<i64>>,
    #[serde(default)]
    pub agents: Vec<AgentEntry>,
}

/// Where an experiment's instances come from: exactly one of `path`,
/// `builtin` or `random`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSource {
    /// Instance file, relative to the experiment file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// `appendix-c` or `sided`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// `sca` or `ca`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<String>,
    /// Number of random instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Agent counts to draw from, one per instance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub agents: Vec<usize>,
    /// Item counts to draw from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_value: Option<u64>,
    /// Item count of the sided example.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismSection {
    /// `greedy`, `sca`, `ca` or `partition-max`.
    pub kind: Spanned<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub appendix_b_lottery: Option<String>,
}

/// One agent's declaration in a fixed or starting profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedBid {
    pub id: Spanned<i64>,
    pub items: Vec<ItemRef>,
    pub bid: Spanned<i64>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn one() -> u64 {
    1
}

fn is_one(v: &u64) -> bool {
    *v == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsSection {
    /// `regret`, `best-response` or `fixed`.
    pub kind: Spanned<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<Spanned<i64>>,
    /// `T = rounds_per_agent · n`, used when `rounds` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds_per_agent: Option<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub replicas: u64,
    /// One-based agent ids.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scripted_order: Option<Vec<usize>>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub empty_start: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub keep_on_tie: bool,
    /// The profile replayed by `fixed` dynamics.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profile: Vec<FixedBid>,
    /// Starting declarations for best-response dynamics; unlisted agents
    /// start empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub start: Vec<FixedBid>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentsSection {
    /// `mw`, `fpl`, `best-response` or `byzantine`; defaults to `mw` for
    /// regret dynamics and `best-response` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub behavior: Option<String>,
    /// Per-agent behaviour, keyed by one-based id.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub behaviors: BTreeMap<String, String>,
    /// Constant learning rate instead of `√(8 ln K / t)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mw_rate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fpl_scale: Option<String>,
    /// One-based ids of byzantine agents.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub byzantine: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcceptanceSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    /// Additive slack, as a fraction of the optimum, for the regret bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<String>,
    /// `regret`, `best-response-sca` or `best-response-ca`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_ratio: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_pass_fraction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_regret: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub require_separated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_lemma6_fraction: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub require_lemma2: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_converged: Option<bool>,
    /// Fail if any visited profile is an equilibrium.
    #[serde(default, skip_serializing_if = "is_false")]
    pub forbid_equilibria: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub instance: InstanceSource,
    pub mechanism: MechanismSection,
    pub dynamics: DynamicsSection,
    #[serde(default)]
    pub agents: AgentsSection,
    #[serde(default)]
    pub acceptance: AcceptanceSection,
}

pub(crate) fn spanned<T>(value: T) -> Spanned<T> {
    Spanned::new(Range::<usize>::default(), value)
}

/// One-based line of a byte offset, if the span is real.
pub(crate) fn line_of(src: &str, span: Range<usize>) -> Option<usize> {
    if span.end == 0 || span.start > src.len() {
        return None;
    }
    Some(src[..span.start].bytes().filter(|&b| b == b'\n').count() + 1)
}
