use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use auctionlab::algorithms::optimal_for;
use auctionlab::experiment::{
    list_scenarios, load_experiment, load_instance, load_scenario, run_experiment, scenario_source,
    Experiment, Overrides, SCENARIOS,
};
use auctionlab::model::{Feasibility, Instance};
use auctionlab::Result;

#[derive(Parser)]
#[command(name = "auctionlab", version, about = "Repeated combinatorial auction simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance (`*.instance`) or experiment file without running it.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run an experiment file or built-in scenario; exits 1 if a check fails.
    Run {
        /// Path or scenario name.
        target: String,
        #[command(flatten)]
        flags: Flags,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// List built-in scenarios, or print one.
    Scenarios { name: Option<String> },
    /// Print the optimal welfare and an optimal allocation.
    Oracle {
        /// Instance file, experiment file or scenario name.
        target: String,
        /// Cap on bundle sizes when `target` is an instance file.
        #[arg(long)]
        s: Option<u32>,
    },
}

#[derive(Args, Clone, Default)]
struct Flags {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replicas: Option<u64>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    /// One-based agent ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    scripted_order: Option<Vec<usize>>,
    /// Fallback lottery probability.
    #[arg(long)]
    appendix_b_lottery: Option<String>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            replicas: self.replicas,
            gamma: self.gamma.clone(),
            epsilon: self.epsilon.clone(),
            scripted_order: self.scripted_order.clone(),
            appendix_b_lottery: self.appendix_b_lottery.clone(),
        }
    }
}

fn is_instance(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "instance")
}

fn experiment(target: &str, overrides: &Overrides) -> Result<Experiment> {
    let path = Path::new(target);
    if !path.exists() && scenario_source(target).is_ok() {
        return load_scenario(target, overrides);
    }
    load_experiment(path, overrides)
}

fn print_optimum(inst: &Instance, feasibility: Feasibility) -> Result<()> {
    let (alloc, value) = optimal_for(&inst.types, feasibility)?;
    println!("SW_opt = {value}");
    for (i, b) in alloc.iter().enumerate() {
        if !b.is_empty() {
            println!("  agent {}: {} (value {})", i + 1, inst.describe(*b), inst.types[i].value_of(*b));
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { file, flags } => {
            if is_instance(&file) {
                let inst = load_instance(&file)?;
                println!("ok: {} agents, {} items", inst.agents(), inst.items);
            } else {
                let exp = load_experiment(&file, &flags.overrides())?;
                println!(
                    "ok: {} ({} instance(s), {} rounds, {} replica(s))",
                    exp.name,
                    exp.runs.len(),
                    exp.runs[0].rounds,
                    exp.runs[0].replicas
                );
            }
            Ok(true)
        }
        Command::Run { target, flags, out_dir } => {
            let exp = experiment(&target, &flags.overrides())?;
            let summary = run_experiment(&exp, out_dir.as_deref())?;
            for c in &summary.checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if summary.checks.is_empty() {
                for r in &summary.replicas {
                    println!("instance {} replica {}: ratio {}", r.instance, r.replica, r.ratio);
                }
            }
            Ok(summary.passed)
        }
        Command::Scenarios { name: Some(name) } => {
            print!("{}", scenario_source(&name)?);
            Ok(true)
        }
        Command::Scenarios { name: None } => {
            for (name, about, _) in SCENARIOS {
                println!("{name:<26} {about}");
            }
            debug_assert_eq!(list_scenarios().len(), SCENARIOS.len());
            Ok(true)
        }
        Command::Oracle { target, s } => {
            let path = Path::new(&target);
            if is_instance(path) {
                let inst = load_instance(path)?;
                let feasibility = match s.or(inst.cap) {
                    Some(cap) => Feasibility::Capped(cap),
                    None => Feasibility::Disjoint,
                };
                print_optimum(&inst, feasibility)?;
            } else {
                let exp = experiment(&target, &Overrides::default())?;
                for (k, (inst, run)) in exp.instances.iter().zip(&exp.runs).enumerate() {
                    println!("instance {k} ({} agents, {} items)", inst.agents(), inst.items);
                    print_optimum(inst, run.mechanism.feasibility())?;
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
