//! `dampwave`: run simulations from TOML configs, sweep over many configs,
//! and run the verification suites.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid config or usage,
//! 3 run ended early (blow-up or resolution guard), 4 verification failed.

mod config;
mod output;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dampwave_core::integrator::evolve;
use dampwave_core::verify::{run_suite, Suite};
use dampwave_core::CoreError;

use config::Prepared;

const OUTPUT_ROOT_ENV: &str = "DAMPWAVE_OUTPUT_ROOT";

#[derive(Parser, Debug)]
#[command(name = "dampwave", version, about = "Damped water-wave simulations and checks")]
struct Cli {
    /// Root for relative output directories (default: the current directory,
    /// or $DAMPWAVE_OUTPUT_ROOT).
    #[arg(long, global = true)]
    output_root: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one simulation from a config file.
    Run { config: PathBuf },
    /// Run a verification suite and report each check.
    Verify {
        /// operators, semigroup, inequality, decay_bi, decay_uni,
        /// energy_balance, convergence, or all.
        suite: String,
    },
    /// Run every config matching a glob pattern, in parallel.
    Sweep {
        pattern: String,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok = 0,
    Io = 1,
    Invalid = 2,
    Incomplete = 3,
    VerifyFailed = 4,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(o as u8)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Outcome::Invalid.into() } else { Outcome::Ok.into() };
        }
    };
    let root = cli.output_root.or_else(|| std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from));
    let outcome = match cli.command {
        Command::Run { config } => cmd_run(&config, root.as_deref()),
        Command::Verify { suite } => cmd_verify(&suite),
        Command::Sweep { pattern, jobs } => cmd_sweep(&pattern, jobs, root.as_deref()),
    };
    outcome.into()
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

fn cmd_run(path: &Path, root: Option<&Path>) -> Outcome {
    match config::prepare(path, root) {
        Ok(prepared) => execute(&prepared),
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::Invalid
        }
    }
}

fn execute(prepared: &Prepared) -> Outcome {
    let cfg = &prepared.config;
    let label = prepared.path.display();
    let record = match evolve(&prepared.initial, &cfg.params, cfg.model, &prepared.step, &prepared.observe) {
        Ok(r) => r,
        Err(e @ (CoreError::Config(_) | CoreError::Domain(_))) => {
            eprintln!("error: {label}: {e}");
            return Outcome::Invalid;
        }
        Err(e) => {
            eprintln!("error: {label}: {e}");
            return Outcome::Incomplete;
        }
    };
    if let Err(e) = output::write_run(prepared, &record) {
        eprintln!("error: {label}: writing {}: {e}", prepared.directory.display());
        return Outcome::Io;
    }
    let summary = output::summary(&record, prepared.step.t_final);
    let rate = summary
        .a0_decay
        .fit
        .map_or_else(|| "n/a".to_string(), |f| format!("{:.4}", f.rate));
    println!(
        "{label}: {} after {} steps (dt = {}), A0 rate {rate} (target >= {}), output {}",
        record.status.name(),
        record.steps_taken,
        record.dt,
        summary.a0_decay.target_rate,
        prepared.directory.display()
    );
    if record.status.is_completed() {
        Outcome::Ok
    } else {
        eprintln!("warning: {label}: run ended early: {:?}", record.status);
        Outcome::Incomplete
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(name: &str) -> Outcome {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        match name.parse() {
            Ok(s) => vec![s],
            Err(e) => {
                eprintln!("error: {e}, all");
                return Outcome::Invalid;
            }
        }
    };
    let mut failed = 0usize;
    let mut total = 0usize;
    for suite in suites {
        println!("suite {}", suite.name());
        match run_suite(suite) {
            Ok(checks) => {
                for check in checks {
                    total += 1;
                    failed += usize::from(!check.passed);
                    println!("  {check}");
                }
            }
            Err(e) => {
                total += 1;
                failed += 1;
                println!("  FAIL [{}] suite aborted: {e}", suite.name());
            }
        }
    }
    println!("{} of {total} checks passed", total - failed);
    if failed == 0 {
        Outcome::Ok
    } else {
        Outcome::VerifyFailed
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(pattern: &str, jobs: Option<usize>, root: Option<&Path>) -> Outcome {
    let paths: Vec<PathBuf> = match glob::glob(pattern) {
        Ok(paths) => paths.filter_map(|p| p.ok()).filter(|p| p.is_file()).collect(),
        Err(e) => {
            eprintln!("error: bad pattern '{pattern}': {e}");
            return Outcome::Invalid;
        }
    };
    if paths.is_empty() {
        eprintln!("error: no config files match '{pattern}'");
        return Outcome::Invalid;
    }

    // Everything is validated up front so a typo in one file does not
    // surface after the others have run for minutes.
    let mut prepared = Vec::new();
    let mut worst = Outcome::Ok;
    for path in &paths {
        match config::prepare(path, root) {
            Ok(p) => prepared.push(p),
            Err(e) => {
                eprintln!("error: {e}");
                worst = Outcome::Invalid;
            }
        }
    }
    let mut seen: HashMap<&Path, &Path> = HashMap::new();
    for p in &prepared {
        if let Some(other) = seen.insert(&p.directory, &p.path) {
            eprintln!(
                "error: {} and {} both write to {}",
                other.display(),
                p.path.display(),
                p.directory.display()
            );
            worst = Outcome::Invalid;
        }
    }
    if worst != Outcome::Ok {
        return worst;
    }

    let workers = jobs
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .clamp(1, prepared.len());
    let next = std::sync::atomic::AtomicUsize::new(0);
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(p) = prepared.get(i) else { break };
                        local.push(execute(p));
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap_or_else(|_| vec![Outcome::Io])).collect()
    });
    let failures = outcomes.iter().filter(|o| **o != Outcome::Ok).count();
    println!("sweep: {} runs, {} not completed", prepared.len(), failures);
    outcomes.into_iter().max().unwrap_or(Outcome::Ok)
}
