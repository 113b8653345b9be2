//! Standard Young tableaux: hook length formula against explicit enumeration.
//!
//!     cargo run --example hook_lengths -- 4 2 1

use permlab::enumeration::hook_length_count;
use permlab::rsk::{enumerate_syt, Partition};

fn main() -> permlab::Result<()> {
    let parts: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let lambda = Partition::new(if parts.is_empty() { vec![3, 2] } else { parts })?;
    let tableaux = enumerate_syt(&lambda)?;
    println!("shape {lambda}, hooks {:?}", lambda.hooks());
    println!("hook length formula: {}, enumerated: {}", hook_length_count(&lambda), tableaux.len());
    for t in tableaux.iter().take(4) {
        println!("{t}\n");
    }
    for w in 0..=10 {
        let all = Partition::all_of(w);
        let ok = all.iter().all(|l| hook_length_count(l) == enumerate_syt(l).unwrap().len().into());
        println!("weight {w:>2}: {:>2} shapes, formula agrees: {ok}", all.len());
    }
    Ok(())
}
