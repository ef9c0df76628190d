//! Load a built-in scenario, override its seed, run it and write the traces
//! and summary.
//!
//! ```text
//! cargo run --release --example run_scenario -- random-sca /tmp/out
//! ```

use std::path::PathBuf;

use auctionlab::experiment::{list_scenarios, load_scenario, run_experiment, Overrides};

fn main() -> auctionlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "appendix-c-cycle".into());
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("auctionlab-example"));
    println!("available: {}", list_scenarios().join(", "));

    let overrides = Overrides {
        seed: Some(11),
        ..Overrides::default()
    };
    let exp = load_scenario(&name, &overrides)?;
    let summary = run_experiment(&exp, Some(&out))?;
    for c in &summary.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} replicas written to {}", summary.replicas.len(), out.display());
    Ok(())
}
