//! Runs every invariant suite and prints a table.
//!
//!     cargo run --release --example verify_all -- 7

use permlab::verify::{run_suite, Suite};

fn main() {
    let nmax: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let out = run_suite(Suite::All, nmax);
    for o in &out {
        let tag = if o.passed { "ok" } else if o.known_failure { "known" } else { "FAIL" };
        println!("{tag:<6} {:<12} {} {}", o.suite.to_string(), o.name, o.detail);
    }
    let failed = out.iter().filter(|o| !o.passed && !o.known_failure).count();
    println!("{} checks, {failed} unexpected failures", out.len());
    std::process::exit(i32::from(failed > 0));
}
