// SPDX-License-Identifier: Apache-2.0

// One line per acceptance criterion; the process fails if any criterion
// does, or if the suite no longer detects an injected fault.

use std::process::ExitCode;
use std::time::Instant;

use subclassical::acceptance::{run, run_all, Fault};

const BUDGET_SECS: f64 = 60.0;

fn main() -> ExitCode {
    let start = Instant::now();
    let mut ok = true;
    for id in 1..=10 {
        let c = run(id, None);
        println!("{}", c.line());
        ok &= c.passed;
    }
    let elapsed = start.elapsed().as_secs_f64();
    let in_budget = elapsed < BUDGET_SECS;
    println!(
        "[{}] suite time {elapsed:.2} s (budget {BUDGET_SECS} s)",
        if in_budget { "PASS" } else { "FAIL" }
    );
    ok &= in_budget;

    let faulty: Vec<u8> =
        run_all(Some(Fault::PerturbedR)).into_iter().filter(|c| !c.passed).map(|c| c.id).collect();
    let detected = faulty == [5, 6, 8];
    println!("[{}] perturbed R detected by criteria {faulty:?}", if detected { "PASS" } else { "FAIL" });
    ok &= detected;

    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
