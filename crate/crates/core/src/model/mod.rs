//! Domain types shared by every layer: bundles, tick values, valuations,
//! declarations, allocations and outcomes.

mod allocation;
mod bundle;
mod profile;
mod valuation;
mod value;

pub use allocation::{feasible, social_welfare, Allocation, Feasibility, Outcome};
pub(crate) use allocation::true_welfare;
pub use bundle::{Bundle, MAX_ITEMS};
pub use profile::{Declaration, Profile};
pub use valuation::Valuation;
pub use value::{fmt_rational, rational_to_f64, Rational, Value, MAX_VALUE};

/// An auction instance: item count, optional cap, and the agents' true types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub items: u32,
    pub labels: Vec<String>,
    pub cap: Option<u32>,
    pub types: Vec<Valuation>,
}

impl Instance {
    pub fn new(items: u32, cap: Option<u32>, types: Vec<Valuation>) -> Self {
        Instance {
            items,
            labels: Vec::new(),
            cap,
            types,
        }
    }

    pub fn agents(&self) -> usize {
        self.types.len()
    }

    pub fn full(&self) -> Bundle {
        Bundle::full(self.items)
    }

    /// Human-readable bundle using item labels when present.
    pub fn describe(&self, bundle: Bundle) -> String {
        if self.labels.is_empty() {
            return bundle.to_string();
        }
        let names: Vec<&str> = bundle
            .items()
            .map(|i| self.labels[i as usize].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}
