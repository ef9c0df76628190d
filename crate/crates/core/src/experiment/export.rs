use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::dynamics::Trace;
use crate::error::Result;
use crate::model::{fmt_rational, Rational};

/// One acceptance check with a human-readable detail line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-replica statistics; rationals are written as `p/q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplicaRow {
    pub instance: usize,
    pub replica: u64,
    pub rounds: usize,
    pub average_welfare: String,
    pub optimum: u64,
    pub ratio: String,
    pub ratio_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_regret: Option<String>,
    /// Average regret per agent; `null` for agents without a measurement.
    pub regret: Vec<Option<String>>,
    /// Fraction of rounds each agent spends in `G`.
    pub g_fractions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma6_min_fraction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma2_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_period: Option<usize>,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibrium_visited: Option<bool>,
    #[serde(skip)]
    pub(crate) exact: RowExact,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct RowExact {
    pub ratio: Rational,
    pub max_regret: Option<Rational>,
    pub lemma6: Option<Rational>,
}

impl ReplicaRow {
    pub fn ratio(&self) -> Rational {
        self.exact.ratio
    }

    pub fn max_regret_exact(&self) -> Option<Rational> {
        self.exact.max_regret
    }

    pub fn lemma6_exact(&self) -> Option<Rational> {
        self.exact.lemma6
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub index: usize,
    pub agents: usize,
    pub items: u32,
    pub mechanism: String,
    pub optimum: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub instances: Vec<InstanceSummary>,
    pub replicas: Vec<ReplicaRow>,
}

impl Summary {
    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }
}

/// Header for a trace of `n` agents.
pub fn trace_header(n: usize) -> Vec<String> {
    let mut h = vec!["round".to_string(), "updater".to_string()];
    for i in 1..=n {
        h.extend([format!("set_{i}"), format!("bid_{i}")]);
    }
    h.push("coin".into());
    h.extend((1..=n).map(|i| format!("won_{i}")));
    h.extend((1..=n).map(|i| format!("pay_{i}")));
    h.extend(["declared_sw", "true_sw"].map(String::from));
    h
}

/// One row per round. Sets are item bitmasks; amounts are integer ticks.
pub fn write_trace_csv(path: &Path, trace: &Trace) -> Result<()> {
    let n = trace.initial.len();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(trace_header(n))?;
    for r in &trace.records {
        let mut row = vec![r.round.to_string(), r.updater.to_string()];
        for d in r.profile.iter() {
            row.push(d.set().mask().to_string());
            row.push(d.amount().to_string());
        }
        row.push(r.coin.to_string());
        row.extend(r.outcome.allocation.iter().map(|b| b.mask().to_string()));
        row.extend(r.outcome.payments.iter().map(|p| p.to_string()));
        row.push(r.declared_welfare.to_string());
        row.push(r.true_welfare.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn rat(r: &Rational) -> String {
    fmt_rational(r)
}
