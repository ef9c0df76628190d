//! Instance and experiment files, the scenario library, batch execution
//! and export.

use std::collections::BTreeSet;
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::agents::{AgentModel, Behavior, ByzantinePolicy, FplSchedule, MwSchedule};
use crate::algorithms::{GreedySca, PartitionMax};
use crate::dynamics::{Assumptions, DynamicsKind, RunConfig};
use crate::error::{Error, Result};
use crate::instances::{appendix_c, random_ca, random_sca, sided_example};
use crate::mechanisms::Mechanism;
use crate::model::{Bundle, Declaration, Instance, Profile, Rational, Valuation, Value, MAX_ITEMS, MAX_VALUE};
use crate::rng::seeded;

mod export;
mod run;
mod scenarios;
pub mod schema;

pub use export::{trace_header, write_trace_csv, Check, InstanceSummary, ReplicaRow, Summary};
pub use run::{analyze_trace, run_experiment};
pub use scenarios::{list_scenarios, load_scenario, scenario_source, SCENARIOS};
pub use schema::{ExperimentFile, InstanceFile, ItemRef};

use schema::{line_of, spanned, AgentEntry, AtomEntry};

/// Parses `p/q`, an integer, or a finite decimal such as `0.05`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::config(format!("`{text}` is not a rational number"));
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w: i128 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let scale = 10i128.pow(frac.len() as u32);
        let f: i128 = frac.parse().map_err(|_| bad())?;
        let mag = w.abs() * scale + f;
        return Ok(Rational::new(if negative { -mag } else { mag }, scale));
    }
    t.parse::<i128>().map(Rational::from_integer).map_err(|_| bad())
}

/// Error reporting against one source text.
struct Src<'a> {
    path: &'a Path,
    text: &'a str,
}

impl Src<'_> {
    fn err(&self, span: Option<Range<usize>>, message: impl Into<String>) -> Error {
        let message = message.into();
        let message = match span.and_then(|s| line_of(self.text, s)) {
            Some(line) => format!("line {line}: {message}"),
            None => message,
        };
        Error::Validation {
            path: self.path.to_path_buf(),
            message,
        }
    }

    fn parse<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        toml::from_str(self.text).map_err(|e| {
            let span = e.span();
            self.err(span, e.message().to_string())
        })
    }

    fn rational(&self, field: &str, text: &str) -> Result<Rational> {
        parse_rational(text).map_err(|_| self.err(None, format!("{field}: `{text}` is not a rational number")))
    }
}

fn resolve_items(
    src: &Src,
    span: Option<Range<usize>>,
    refs: &[ItemRef],
    m: u32,
    labels: &[String],
) -> Result<Bundle> {
    let mut bundle = Bundle::EMPTY;
    for r in refs {
        let idx = match r {
            ItemRef::Index(i) if *i < m => *i,
            ItemRef::Index(i) => {
                return Err(src.err(span, format!("item index {i} is outside 0..{m}")))
            }
            ItemRef::Label(l) => match labels.iter().position(|x| x == l) {
                Some(p) => p as u32,
                None => return Err(src.err(span, format!("unknown item label `{l}`"))),
            },
        };
        bundle = bundle.union(Bundle::singleton(idx));
    }
    Ok(bundle)
}

fn check_value(src: &Src, v: &toml::Spanned<i64>, what: &str) -> Result<Value> {
    let x = *v.get_ref();
    if x <= 0 {
        return Err(src.err(Some(v.span()), format!("{what} must be a positive number of ticks, got {x}")));
    }
    if x as u64 > MAX_VALUE {
        return Err(src.err(Some(v.span()), format!("{what} {x} exceeds the maximum {MAX_VALUE}")));
    }
    Ok(Value(x as u64))
}

fn instance_from_file(file: &InstanceFile, src: &Src) -> Result<Instance> {
    let m = *file.m.get_ref();
    if m < 1 || m > MAX_ITEMS as i64 {
        return Err(src.err(
            Some(file.m.span()),
            format!("m must be between 1 and {MAX_ITEMS}, got {m}"),
        ));
    }
    let m = m as u32;
    if !file.items.is_empty() {
        if file.items.len() != m as usize {
            return Err(src.err(None, format!("{} item labels for m = {m}", file.items.len())));
        }
        let unique: BTreeSet<&String> = file.items.iter().collect();
        if unique.len() != file.items.len() {
            return Err(src.err(None, "item labels must be unique"));
        }
    }
    let cap = match &file.s {
        Some(s) if *s.get_ref() < 1 || *s.get_ref() > m as i64 => {
            return Err(src.err(Some(s.span()), format!("s must be between 1 and {m}")))
        }
        Some(s) => Some(*s.get_ref() as u32),
        None => None,
    };
    let n = file.agents.len();
    let mut types = vec![None; n];
    for a in &file.agents {
        let id = *a.id.get_ref();
        if id < 1 || id as usize > n {
            return Err(src.err(
                Some(a.id.span()),
                format!("agent ids must run from 1 to {n}, got {id}"),
            ));
        }
        let slot = &mut types[id as usize - 1];
        if slot.is_some() {
            return Err(src.err(Some(a.id.span()), format!("duplicate agent id {id}")));
        }
        let mut atoms = Vec::with_capacity(a.atoms.len());
        for atom in &a.atoms {
            let set = resolve_items(src, Some(atom.items.span()), atom.items.get_ref(), m, &file.items)?;
            if set.is_empty() {
                return Err(src.err(Some(atom.items.span()), "an atom needs at least one item"));
            }
            atoms.push((set, check_value(src, &atom.value, "atom value")?));
        }
        *slot = Some(Valuation::new(atoms));
    }
    let mut inst = Instance::new(m, cap, types.into_iter().map(Option::unwrap_or_default).collect());
    inst.labels = file.items.clone();
    Ok(inst)
}

pub fn parse_instance(text: &str, path: &Path) -> Result<Instance> {
    let src = Src { path, text };
    let file: InstanceFile = src.parse()?;
    instance_from_file(&file, &src)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?, path)
}

fn item_refs(inst: &Instance, set: Bundle) -> Vec<ItemRef> {
    set.items()
        .map(|i| match inst.labels.get(i as usize) {
            Some(l) => ItemRef::Label(l.clone()),
            None => ItemRef::Index(i),
        })
        .collect()
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    InstanceFile {
        m: spanned(inst.items as i64),
        items: inst.labels.clone(),
        s: inst.cap.map(|s| spanned(s as i64)),
        agents: inst
            .types
            .iter()
            .enumerate()
            .map(|(i, t)| AgentEntry {
                id: spanned(i as i64 + 1),
                atoms: t
                    .atoms()
                    .iter()
                    .map(|&(s, v)| AtomEntry {
                        items: spanned(item_refs(inst, s)),
                        value: spanned(v.ticks() as i64),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn instance_to_toml(inst: &Instance) -> Result<String> {
    toml::to_string(&instance_to_file(inst)).map_err(|e| Error::config(e.to_string()))
}

/// Which welfare guarantee a run is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `1/(c+1) − slack` for a `c`-approximate rule under regret dynamics.
    Regret,
    /// `1/(8(s+1)) − ε` for the s-CA mechanism under best responses.
    BestResponseSca,
    /// `1/(16(⌈√m⌉+1)) − ε` for the CA mechanism under best responses; a
    /// conservative constant, not a tight one.
    BestResponseCa,
}

impl Bound {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "regret" => Some(Bound::Regret),
            "best-response-sca" => Some(Bound::BestResponseSca),
            "best-response-ca" => Some(Bound::BestResponseCa),
            _ => None,
        }
    }
}

/// Parsed acceptance thresholds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptance {
    pub epsilon: Rational,
    pub slack: Rational,
    pub bound: Option<Bound>,
    pub min_ratio: Option<Rational>,
    pub min_pass_fraction: Rational,
    pub max_regret: Option<Rational>,
    pub require_separated: bool,
    pub min_lemma6_fraction: Option<Rational>,
    pub require_lemma2: bool,
    pub expect_period: Option<usize>,
    pub expect_converged: Option<bool>,
    pub forbid_equilibria: bool,
    pub expect_ratio: Option<Rational>,
}

/// A loaded, validated experiment: one run configuration per instance.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub name: String,
    pub file: ExperimentFile,
    pub instances: Vec<Instance>,
    pub runs: Vec<RunConfig>,
    /// Zero-based.
    pub byzantine: Vec<usize>,
    /// Per instance, the profile replayed by `fixed` dynamics.
    pub fixed: Option<Vec<Profile>>,
    pub acceptance: Acceptance,
}

/// Command-line overrides applied to an experiment file before building.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replicas: Option<u64>,
    pub gamma: Option<String>,
    pub epsilon: Option<String>,
    /// One-based ids.
    pub scripted_order: Option<Vec<usize>>,
    pub appendix_b_lottery: Option<String>,
}

impl Overrides {
    pub fn apply(&self, file: &mut ExperimentFile) {
        if let Some(s) = self.seed {
            file.dynamics.seed = s;
        }
        if let Some(r) = self.replicas {
            file.dynamics.replicas = r;
        }
        if let Some(g) = &self.gamma {
            file.mechanism.gamma = Some(spanned(g.clone()));
        }
        if let Some(e) = &self.epsilon {
            file.acceptance.epsilon = Some(e.clone());
        }
        if let Some(o) = &self.scripted_order {
            file.dynamics.scripted_order = Some(o.clone());
        }
        if let Some(d) = &self.appendix_b_lottery {
            file.mechanism.appendix_b_lottery = Some(d.clone());
        }
    }
}

/// How relative instance paths are resolved.
#[derive(Clone, Copy, Debug)]
pub enum Origin<'a> {
    Dir(&'a Path),
    Embedded,
}

fn pick<T: Copy>(rng: &mut crate::rng::SimRng, choices: &[T], default: T) -> T {
    choices.choose(rng).copied().unwrap_or(default)
}

fn build_instances(file: &ExperimentFile, src: &Src, origin: Origin) -> Result<Vec<Instance>> {
    let s = &file.instance;
    let given = [s.path.is_some(), s.builtin.is_some(), s.random.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(src.err(None, "[instance] needs exactly one of path, builtin or random"));
    }
    if let Some(p) = &s.path {
        return Ok(vec![match origin {
            Origin::Dir(dir) => load_instance(&dir.join(p))?,
            Origin::Embedded => {
                let text = scenarios::embedded_instance(p)
                    .ok_or_else(|| src.err(None, format!("no embedded instance `{p}`")))?;
                parse_instance(text, Path::new(p))?
            }
        }]);
    }
    if let Some(b) = &s.builtin {
        return match b.as_str() {
            "appendix-c" => Ok(vec![appendix_c()]),
            "sided" => {
                let eps = src.rational("instance.epsilon", s.epsilon.as_deref().unwrap_or("1/10"))?;
                let ex = sided_example(s.m.unwrap_or(8), s.scale.unwrap_or(10), eps)
                    .map_err(|e| src.err(None, e.to_string()))?;
                Ok(vec![ex.instance])
            }
            other => Err(src.err(None, format!("unknown builtin instance `{other}`"))),
        };
    }
    let family = s.random.as_deref().unwrap_or_default();
    let mut rng = seeded(s.seed.unwrap_or(0));
    let max_value = s.max_value.unwrap_or(32).clamp(1, MAX_VALUE);
    if s.items.iter().any(|&m| m == 0 || m > MAX_ITEMS) {
        return Err(src.err(None, format!("instance.items must lie in 1..={MAX_ITEMS}")));
    }
    (0..s.count.unwrap_or(1))
        .map(|_| {
            let n = pick(&mut rng, &s.agents, 4);
            let m = pick(&mut rng, &s.items, 8);
            match family {
                "sca" => Ok(random_sca(&mut rng, n, m, s.cap.unwrap_or(2), max_value)),
                "ca" => Ok(random_ca(&mut rng, n, m, max_value)),
                other => Err(src.err(None, format!("unknown random family `{other}`"))),
            }
        })
        .collect()
}

fn build_mechanism(file: &ExperimentFile, src: &Src, inst: &Instance) -> Result<Mechanism> {
    let sec = &file.mechanism;
    let kind = sec.kind.get_ref().as_str();
    let m = inst.items;
    let cap = || {
        sec.s.or(inst.cap).ok_or_else(|| {
            src.err(Some(sec.kind.span()), format!("mechanism `{kind}` needs s"))
        })
    };
    if kind != "ca" {
        if let Some(g) = &sec.gamma {
            return Err(src.err(Some(g.span()), "gamma applies only to the ca mechanism"));
        }
    }
    let mech = match kind {
        "greedy" => Mechanism::over_rule(Arc::new(GreedySca { cap: cap()? }), m),
        "sca" => Mechanism::sca(cap()?, m),
        "ca" => {
            let g = sec
                .gamma
                .as_ref()
                .ok_or_else(|| src.err(Some(sec.kind.span()), "the ca mechanism needs gamma"))?;
            let gamma = parse_rational(g.get_ref())
                .map_err(|e| src.err(Some(g.span()), e.to_string()))?;
            Mechanism::ca(m, gamma).map_err(|e| src.err(Some(g.span()), e.to_string()))?
        }
        "partition-max" => {
            let half = m / 2;
            let rule = PartitionMax::for_items(
                Bundle::from_items(0..half),
                Bundle::from_items(half..m),
                m,
                sec.s.or(inst.cap).unwrap_or(half.max(1)),
            )
            .map_err(|e| src.err(Some(sec.kind.span()), e.to_string()))?;
            Mechanism::over_rule(Arc::new(rule), m)
        }
        other => {
            return Err(src.err(Some(sec.kind.span()), format!("unknown mechanism `{other}`")))
        }
    };
    match &sec.appendix_b_lottery {
        Some(d) => mech
            .with_lottery(src.rational("mechanism.appendix_b_lottery", d)?)
            .map_err(|e| src.err(None, e.to_string())),
        None => Ok(mech),
    }
}

fn parse_behavior(src: &Src, name: &str, mw: MwSchedule, fpl: FplSchedule) -> Result<Behavior> {
    match name {
        "mw" => Ok(Behavior::RegretMw(mw)),
        "fpl" => Ok(Behavior::RegretFpl(fpl)),
        "best-response" => Ok(Behavior::BestResponse),
        "byzantine" => Ok(Behavior::Byzantine(ByzantinePolicy::Uniform)),
        other => Err(src.err(None, format!("unknown behaviour `{other}`"))),
    }
}

fn build_agents(file: &ExperimentFile, src: &Src, inst: &Instance, kind: Option<DynamicsKind>) -> Result<(Vec<AgentModel>, Vec<usize>)> {
    let sec = &file.agents;
    let n = inst.agents();
    let float = |field: &str, v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x >= 0.0)
            .ok_or_else(|| src.err(None, format!("{field}: `{v}` is not a non-negative number")))
    };
    let mw = match &sec.mw_rate {
        Some(r) => MwSchedule::Constant(float("agents.mw_rate", r)?),
        None => MwSchedule::Standard,
    };
    let fpl = match &sec.fpl_scale {
        Some(s) => FplSchedule { scale: float("agents.fpl_scale", s)? },
        None => FplSchedule::default(),
    };
    let default = sec.behavior.clone().unwrap_or_else(|| match kind {
        Some(DynamicsKind::Regret) => "mw".into(),
        _ => "best-response".into(),
    });
    let default = parse_behavior(src, &default, mw, fpl)?;
    let mut behaviors = vec![default; n];
    let check_id = |id: usize| {
        if id == 0 || id > n {
            Err(src.err(None, format!("agent id {id} does not exist (instance has {n} agents)")))
        } else {
            Ok(id - 1)
        }
    };
    for (key, name) in &sec.behaviors {
        let id: usize = key
            .parse()
            .map_err(|_| src.err(None, format!("agents.behaviors key `{key}` is not an id")))?;
        behaviors[check_id(id)?] = parse_behavior(src, name, mw, fpl)?;
    }
    let mut byzantine = Vec::new();
    for &id in &sec.byzantine {
        let i = check_id(id)?;
        behaviors[i] = Behavior::Byzantine(ByzantinePolicy::Uniform);
        byzantine.push(i);
    }
    for (i, b) in behaviors.iter().enumerate() {
        if b.is_byzantine() && !byzantine.contains(&i) {
            byzantine.push(i);
        }
    }
    byzantine.sort();
    let agents = inst
        .types
        .iter()
        .zip(behaviors)
        .enumerate()
        .map(|(i, (t, b))| AgentModel::new(i, t.clone(), b))
        .collect();
    Ok((agents, byzantine))
}

fn build_acceptance(file: &ExperimentFile, src: &Src) -> Result<Acceptance> {
    let a = &file.acceptance;
    let opt = |field: &str, v: &Option<String>| -> Result<Option<Rational>> {
        v.as_deref().map(|t| src.rational(field, t)).transpose()
    };
    let bound = match &a.bound {
        Some(b) => Some(Bound::parse(b).ok_or_else(|| src.err(None, format!("unknown bound `{b}`")))?),
        None => None,
    };
    let epsilon = src.rational("acceptance.epsilon", a.epsilon.as_deref().unwrap_or("1/10"))?;
    if epsilon < Rational::from_integer(0) {
        return Err(src.err(None, "acceptance.epsilon must be non-negative"));
    }
    Ok(Acceptance {
        epsilon,
        slack: src.rational("acceptance.slack", a.slack.as_deref().unwrap_or("1/20"))?,
        bound,
        min_ratio: opt("acceptance.min_ratio", &a.min_ratio)?,
        min_pass_fraction: opt("acceptance.min_pass_fraction", &a.min_pass_fraction)?
            .unwrap_or(Rational::from_integer(1)),
        max_regret: opt("acceptance.max_regret", &a.max_regret)?,
        require_separated: a.require_separated,
        min_lemma6_fraction: opt("acceptance.min_lemma6_fraction", &a.min_lemma6_fraction)?,
        require_lemma2: a.require_lemma2,
        expect_period: a.expect_period,
        expect_converged: a.expect_converged,
        forbid_equilibria: a.forbid_equilibria,
        expect_ratio: opt("acceptance.expect_ratio", &a.expect_ratio)?,
    })
}

fn declared_profile(src: &Src, bids: &[schema::FixedBid], inst: &Instance) -> Result<Profile> {
    let n = inst.agents();
    let mut p = Profile::empty(n);
    for fb in bids {
        let id = *fb.id.get_ref();
        if id < 1 || id as usize > n {
            return Err(src.err(Some(fb.id.span()), format!("agent id {id} does not exist")));
        }
        let set = resolve_items(src, Some(fb.id.span()), &fb.items, inst.items, &inst.labels)?;
        let x = *fb.bid.get_ref();
        if x < 0 || x as u64 > MAX_VALUE {
            return Err(src.err(Some(fb.bid.span()), format!("bid {x} is out of range")));
        }
        let decl = if x == 0 || set.is_empty() {
            Declaration::Empty
        } else {
            Declaration::bid(set, Value(x as u64))
        };
        p.set(id as usize - 1, decl);
    }
    Ok(p)
}

fn build_experiment(file: ExperimentFile, src: &Src, origin: Origin) -> Result<Experiment> {
    let d = &file.dynamics;
    let kind = match d.kind.get_ref().as_str() {
        "regret" => Some(DynamicsKind::Regret),
        "best-response" => Some(DynamicsKind::BestResponse),
        "fixed" => None,
        other => {
            return Err(src.err(Some(d.kind.span()), format!("unknown dynamics `{other}`")))
        }
    };
    if let Some(r) = &d.rounds {
        if *r.get_ref() < 1 {
            return Err(src.err(Some(r.span()), format!("rounds must be at least 1, got {}", r.get_ref())));
        }
    } else if d.rounds_per_agent.unwrap_or(0) == 0 {
        return Err(src.err(Some(d.kind.span()), "[dynamics] needs rounds or rounds_per_agent ≥ 1"));
    }
    if d.replicas == 0 {
        return Err(src.err(None, "dynamics.replicas must be at least 1"));
    }
    let acceptance = build_acceptance(&file, src)?;
    let instances = build_instances(&file, src, origin)?;
    let mut runs = Vec::with_capacity(instances.len());
    let mut byzantine = Vec::new();
    let mut fixed = kind.is_none().then(Vec::new);
    for (k, inst) in instances.iter().enumerate() {
        let mechanism = build_mechanism(&file, src, inst)?;
        let (agents, byz) = build_agents(&file, src, inst, kind)?;
        byzantine = byz;
        let n = inst.agents();
        let rounds = match &d.rounds {
            Some(r) => *r.get_ref() as usize,
            None => (d.rounds_per_agent.unwrap_or(0) as usize * n).max(1),
        };
        let order = match &d.scripted_order {
            Some(o) => Some(
                o.iter()
                    .map(|&id| {
                        if id == 0 || id > n {
                            Err(src.err(None, format!("scripted order names unknown agent {id}")))
                        } else {
                            Ok(id - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let mut cfg = RunConfig::new(mechanism, agents, kind.unwrap_or(DynamicsKind::BestResponse), rounds);
        cfg.seed = d.seed.wrapping_add(k as u64);
        cfg.replicas = d.replicas;
        cfg.epsilon = acceptance.epsilon;
        cfg.assumptions = Assumptions {
            empty_start: d.empty_start,
            keep_on_tie: d.keep_on_tie,
        };
        cfg.scripted_order = order;
        if !d.start.is_empty() {
            if kind != Some(DynamicsKind::BestResponse) {
                return Err(src.err(Some(d.kind.span()), "[[dynamics.start]] needs best-response dynamics"));
            }
            cfg.start = Some(declared_profile(src, &d.start, inst)?);
        }
        cfg.validate().map_err(|e| src.err(None, e.to_string()))?;
        if let Some(profiles) = fixed.as_mut() {
            profiles.push(declared_profile(src, &d.profile, inst)?);
        }
        runs.push(cfg);
    }
    if fixed.is_none() && !d.profile.is_empty() {
        return Err(src.err(Some(d.kind.span()), "a [[dynamics.profile]] needs fixed dynamics"));
    }
    let name = file
        .name
        .clone()
        .unwrap_or_else(|| src.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    Ok(Experiment {
        name,
        file,
        instances,
        runs,
        byzantine,
        fixed,
        acceptance,
    })
}

pub fn parse_experiment_file(text: &str, path: &Path) -> Result<ExperimentFile> {
    Src { path, text }.parse()
}

/// Parses and validates an experiment, applying `overrides` first.
pub fn parse_experiment(text: &str, path: &Path, origin: Origin, overrides: &Overrides) -> Result<Experiment> {
    let src = Src { path, text };
    let mut file: ExperimentFile = src.parse()?;
    overrides.apply(&mut file);
    build_experiment(file, &src, origin)
}

pub fn load_experiment(path: &Path, overrides: &Overrides) -> Result<Experiment> {
    let text = fs::read_to_string(path)?;
    let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_experiment(&text, path, Origin::Dir(&dir), overrides)
}

pub fn experiment_to_toml(file: &ExperimentFile) -> Result<String> {
    toml::to_string(file).map_err(|e| Error::config(e.to_string()))
}


#[cfg(test)]
mod tests;
