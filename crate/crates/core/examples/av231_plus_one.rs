//! `Av(231)+1`: the closed form, the functional equation built from Catalan
//! pieces, and direct counts of each structural piece.
//!
//!     cargo run --release --example av231_plus_one

use permlab::enumeration::{count_bruteforce, count_structural_all, StructuralPredicateId};
use permlab::perm::perm;
use permlab::series::{coeff_u64, gf_231p1, solve_functional_equation_231, Decomposition231};

fn main() -> permlab::Result<()> {
    let order = 20;
    let f = gf_231p1().expand(order)?;
    assert_eq!(f, solve_functional_equation_231(order));
    println!("closed form = functional equation to order {order}");
    println!("coefficients: {:?}", (0..=order).map(|n| coeff_u64(&f, n)).collect::<Vec<_>>());

    let d = Decomposition231::with_f(&f);
    let pieces = [
        ("greatest in no 231", &d.no_greatest_in_231),
        ("essential greatest", &d.extreme_essential),
        ("small essential", &d.small_essential),
        ("large essential", &d.large_essential),
    ];
    println!("\n{:>3} {:>8} {:>8} | pieces (series / counted)", "n", "total", "brute");
    for n in 0..=8 {
        let counted = count_structural_all(n)?;
        let direct = [counted[0], counted[1], counted[5], counted[6]];
        let cells: Vec<String> =
            pieces.iter().zip(direct).map(|((_, s), c)| format!("{}/{c}", coeff_u64(s, n))).collect();
        println!("{n:>3} {:>8} {:>8} | {}", coeff_u64(&f, n), count_bruteforce(n, &[perm("231")], 1)?, cells.join("  "));
    }
    println!("\npiece order: {}", pieces.map(|p| p.0).join(", "));
    println!("predicates: {:?}", StructuralPredicateId::ALL);
    Ok(())
}
