//! `Av(321)+1` four ways: deletion, the RSK shape test, the closed-form sum
//! and the algebraic generating function.
//!
//!     cargo run --release --example av321_plus_one -- 9

use permlab::enumeration::{count_321p1_by_shapes, count_321p1_formula, count_bruteforce};
use permlab::perm::perm;
use permlab::rsk::{rsk, shape};
use permlab::series::gf_321p1;

fn main() -> permlab::Result<()> {
    let nmax: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8).min(10);

    let p = perm("3421");
    let pair = rsk(&p);
    println!("RSK of {p}: shape {}\nP =\n{}\nQ =\n{}\n", shape(&p), pair.p, pair.q);

    let gf = gf_321p1();
    println!("GF (A; B; D) = {}", gf.to_text());
    let s = gf.expand(nmax)?;
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "n", "deletion", "shapes", "formula", "series");
    for n in 0..=nmax {
        println!(
            "{n:>3} {:>10} {:>10} {:>10} {:>10}",
            count_bruteforce(n, &[perm("321")], 1)?,
            count_321p1_by_shapes(n),
            count_321p1_formula(n),
            s.coeff(n)
        );
    }
    Ok(())
}
