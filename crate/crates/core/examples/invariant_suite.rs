//! Runs the randomized invariant suite with a seed from the command line.

use torheight::verify::{run_suite, SuiteSize};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let size = SuiteSize { concave: 10, a21: 5, toric: 5, heights: 4 };
    for o in run_suite(seed, size) {
        let status = if o.passed() { "pass" } else { "FAIL" };
        println!("{:28} {status} ({} cases)", o.name, o.cases);
        if let Some(msg) = o.first_failure {
            println!("  first failure: {msg}");
        }
    }
}
