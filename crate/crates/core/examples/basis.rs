//! Finite bases of `C+t`.
//!
//!     cargo run --release --example basis -- 321 1 7

use permlab::basis::{compute_basis, verify_antichain};
use permlab::perm::parse_basis;

fn main() -> permlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let basis = parse_basis(args.first().map_or("321", String::as_str))?;
    let t: usize = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let max_len: usize = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(7);

    let r = compute_basis(&basis, t, max_len)?;
    println!("members per length: {:?}", r.members_per_length);
    println!("basis elements by length: {:?}", r.length_histogram());
    println!("length bound {}, searched to {max_len}, complete: {}", r.bound, r.complete_under_bound);
    println!("antichain: {}", verify_antichain(&r.elements));
    for e in &r.elements {
        println!("  {}", e.compact().unwrap_or_else(|| e.to_string()));
    }
    Ok(())
}
