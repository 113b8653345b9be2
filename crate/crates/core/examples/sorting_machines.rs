//! Stack and two-queue sorting with one-time-use buffers.
//!
//!     cargo run --release --example sorting_machines -- 3412

use permlab::machines::{buffer_discrepancy, sort_witness, sortability_class, MachineKind};
use permlab::perm::parse_permutation;

fn main() -> permlab::Result<()> {
    let p = parse_permutation(&std::env::args().nth(1).unwrap_or_else(|| "3412".into()))?;
    for m in [MachineKind::Stack, MachineKind::TwoParallelQueues] {
        for t in 0..=2 {
            match sort_witness(&p, m, t)? {
                Some(moves) => {
                    let tokens: Vec<String> = moves.iter().map(ToString::to_string).collect();
                    println!("{m} + {t} buffer(s) sorts {p}: {}", tokens.join(" "));
                }
                None => println!("{m} + {t} buffer(s) cannot sort {p}"),
            }
        }
    }

    println!("\nclass sizes (n = 0..=7):");
    for m in [MachineKind::Stack, MachineKind::TwoParallelQueues] {
        for t in 0..=2 {
            let row: Vec<u64> = (0..=7).map(|n| sortability_class(m, t, n).unwrap()).collect();
            println!("  {:<7} t={t}: {row:?}", m.to_string());
        }
    }

    println!("\nmembers of C+t the machine cannot sort (n = 0..=7):");
    for m in [MachineKind::Stack, MachineKind::TwoParallelQueues] {
        for t in 1..=2 {
            let sizes: Vec<usize> = (0..=7).map(|n| buffer_discrepancy(m, t, n).unwrap().unsortable_members.len()).collect();
            println!("  {:<7} t={t}: {sizes:?}", m.to_string());
        }
    }
    Ok(())
}
