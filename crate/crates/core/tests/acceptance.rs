//! Full-size verification sweeps, one line per suite.

use std::time::Instant;

use permlab::par::Execution;
use permlab::verify::Suite;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for suite in Suite::ALL {
        let start = Instant::now();
        let report = suite.run(None, Execution::default());
        println!("{report} [{:.1}s]", start.elapsed().as_secs_f64());
        for f in &report.failures {
            println!("    {f}");
        }
        if !report.passed() {
            failed.push(suite.name());
        }
    }
    assert!(failed.is_empty(), "failing suites: {failed:?}");
}
