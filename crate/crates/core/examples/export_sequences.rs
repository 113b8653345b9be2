//! Writes counting sequences as CSV and b-files.
//!
//!     cargo run --release --example export_sequences -- out/

use std::path::PathBuf;

use num_bigint::BigUint;
use permlab::enumeration::{count_321p1_formula, CountTable};
use permlab::series::{gf_231p1, DEFAULT_ORDER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sequences".into()));
    std::fs::create_dir_all(&dir)?;

    let av321 = CountTable::new("Av(321)+1", 1, (0..=DEFAULT_ORDER).map(count_321p1_formula).collect());
    let f = gf_231p1().expand(DEFAULT_ORDER)?;
    let counts: Vec<BigUint> = f.integer_coeffs()?.into_iter().map(|c| c.to_biguint().expect("non-negative")).collect();
    let av231 = CountTable::new("Av(231)+1", 1, counts);

    for (name, table) in [("av321_t1", &av321), ("av231_t1", &av231)] {
        std::fs::write(dir.join(format!("{name}.csv")), table.to_csv())?;
        std::fs::write(dir.join(format!("{name}.b")), table.to_bfile())?;
        std::fs::write(dir.join(format!("{name}.json")), serde_json::to_string_pretty(table)?)?;
        println!("{name}: n = 0..={DEFAULT_ORDER} written to {}", dir.display());
    }
    Ok(())
}
