//! One line per acceptance criterion, with the failing checks listed below it.
//!
//! Run with `cargo test -p qinv-core --test acceptance -- --nocapture`.

use std::time::Instant;

use qinv_core::verify::{run_suite, Limits, SUITES};

#[test]
fn acceptance() {
    let mut red = Vec::new();
    let mut lines = Vec::new();
    for (i, suite) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let checks = run_suite(suite, &Limits::default()).expect("known suite");
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        let line = format!(
            "criterion {} [{suite}]: {verdict} ({}/{} checks, {:.1}s)",
            i + 1,
            checks.len() - bad.len(),
            checks.len(),
            start.elapsed().as_secs_f64()
        );
        println!("{line}");
        for c in &bad {
            println!("    {}: {}", c.name, c.detail);
        }
        lines.push(line);
        if !bad.is_empty() {
            red.push(i + 1);
        }
    }
    println!("summary:");
    for l in &lines {
        println!("  {l}");
    }
    assert!(red.is_empty(), "failing criteria: {red:?}");
}
