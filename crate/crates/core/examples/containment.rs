//! Pattern containment, deletion, `C+t` membership and essential entries.
//!
//!     cargo run --example containment -- 491867532 51342

use permlab::perm::{
    classify_essential, contains, essential_positions, is_member_plus_t, occurrences, parse_permutation, perm, DeletionSearch,
};

fn main() -> permlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let host = parse_permutation(args.first().map_or("491867532", String::as_str))?;
    let pattern = parse_permutation(args.get(1).map_or("51342", String::as_str))?;

    println!("{host} contains {pattern}: {}", contains(&host, &pattern));
    for o in occurrences(&host, &pattern).iter().take(5) {
        let values: Vec<usize> = o.indices.iter().map(|&i| host.at(i).unwrap()).collect();
        println!("  positions {:?} -> values {values:?}", o.indices);
    }

    let basis = [pattern.clone()];
    let mut search = DeletionSearch::new(&basis);
    match search.distance(&host, 3) {
        Some(d) => println!("deleting {d} entries reaches Av({pattern})"),
        None => println!("more than 3 deletions are needed to reach Av({pattern})"),
    }

    let p = perm("1742653");
    println!("\n{p}: in Av(231)+1 = {}", is_member_plus_t(&p, &[perm("231")], 1));
    for e in essential_positions(&p) {
        println!("  position {e} (entry {}) is {:?}", p.at(e)?, classify_essential(&p, e)?);
        println!("    deleting it leaves {}", p.delete(e)?);
    }
    Ok(())
}
