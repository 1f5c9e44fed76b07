//! Acceptance criteria, one line per criterion followed by its checks.
//!
//! Runs without the libtest harness so the report is always printed. Exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use dampwave_core::verify::criterion;

const TITLES: [&str; 10] = [
    "operator oracle equivalence",
    "semigroup exactness",
    "eigenvalue ratio inequality",
    "unidirectional symbol positivity",
    "bidirectional small-data decay at rate delta",
    "unidirectional small-data decay at rate delta/2",
    "small-data boundedness and loud large-data failure",
    "energy balance residual order and pairing identity",
    "temporal and spatial convergence",
    "mean and reality conservation over 10^4 steps",
];

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for n in 1..=10u8 {
        let start = Instant::now();
        let title = TITLES[n as usize - 1];
        match criterion(n) {
            Ok(checks) => {
                let ok = checks.iter().all(|c| c.passed);
                let failing = checks.iter().filter(|c| !c.passed).count();
                println!(
                    "{} criterion {n:>2}: {title} ({} checks, {failing} failing, {:.1}s)",
                    if ok { "PASS" } else { "FAIL" },
                    checks.len(),
                    start.elapsed().as_secs_f64()
                );
                for c in &checks {
                    println!("    {c}");
                }
                if !ok {
                    failed.push(n);
                }
            }
            Err(e) => {
                println!("FAIL criterion {n:>2}: {title}: error: {e}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
