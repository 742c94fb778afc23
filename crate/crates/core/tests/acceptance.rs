//! Acceptance gate: every criterion at its pinned tolerance and budget,
//! one PASS/FAIL line each.

use frobw_core::frontend::verify::{run_all, CRITERIA};

fn main() {
    println!("\nacceptance: {} criteria", CRITERIA.len());
    let results = run_all(true);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(results.len(), CRITERIA.len());
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed\n", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}\n");
        std::process::exit(1);
    }
}
