//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! Each criterion is one verification suite, run over the default prime
//! field with a fixed seed. Failing suites print their checks in full.

use std::process::ExitCode;
use std::time::Instant;

use twisted_core::verify::{run_suite, SUITES};

const SEED: u64 = 1;

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, (name, description)) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match run_suite(name, None, SEED) {
            Ok(r) => {
                let n = r.checks.len();
                let bad = r.checks.iter().filter(|c| !c.passed).count();
                (r.passed(), if bad == 0 { format!("{n} checks") } else { format!("{bad}/{n} checks failed\n{r}") })
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {} [{name}] {description}: {detail} ({secs:.2}s)",
            i + 1,
            if passed { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!passed);
    }
    println!("{} of {} criteria passed", SUITES.len() - failed, SUITES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
