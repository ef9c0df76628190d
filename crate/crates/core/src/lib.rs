//! Simulation laboratory for repeated combinatorial auctions.
//!
//! The crate is layered bottom-up:
//!
//! - [`model`]: bundles, tick values, valuations, declarations, allocations.
//! - [`algorithms`]: greedy allocation rules, the exact welfare oracle and
//!   randomized monotonicity / loser-independence checkers.
//! - [`mechanisms`]: simplification, exact critical prices, and the three
//!   mechanisms built on the rules.
//! - [`agents`]: undominated bidding, best responses, regret-minimizing
//!   learners and byzantine bidders.
//! - [`dynamics`]: the repeated-game engines and cycle detection.
//! - [`metrics`]: welfare, regret and per-round inequality checks over traces.
//! - [`experiment`]: instance and experiment files, the scenario library,
//!   batch execution and CSV/JSON export.

pub mod agents;
pub mod algorithms;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod instances;
pub mod mechanisms;
pub mod metrics;
pub mod model;
pub mod rng;

pub use error::{Error, Result};
