//! Essential entries with respect to 231: entries whose removal leaves a
//! 231-avoider.

use serde::Serialize;

use super::pattern::{occurrences, Matcher};
use super::Permutation;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EssentialClass {
    NotEssential,
    /// The minimum entry of every 231 occurrence.
    SmallEssential,
    /// The minimum entry of no 231 occurrence.
    LargeEssential,
}

fn p231() -> Permutation {
    Permutation::from_raw(vec![2, 3, 1])
}

/// 1-based positions `i` such that deleting `π(i)` leaves a 231-avoider.
///
/// Every position of a 231-avoider is essential.
pub fn essential_positions(pi: &Permutation) -> Vec<usize> {
    let pattern = p231();
    let matcher = Matcher::new(&pattern);
    (0..pi.len())
        .filter(|&i| matcher.first(pi.delete_index(i).values()).is_none())
        .map(|i| i + 1)
        .collect()
}

/// Small/large classification of an essential entry of a permutation that
/// contains 231.
///
/// An entry that takes part in no 231 at all counts as large: it is the
/// minimum of none of them.
pub fn classify_essential(pi: &Permutation, position: usize) -> Result<EssentialClass> {
    pi.at(position)?;
    let pattern = p231();
    let occ = occurrences(pi, &pattern);
    if occ.is_empty() {
        return Err(Error::Avoids231);
    }
    if !essential_positions(pi).contains(&position) {
        return Err(Error::NotEssential(position));
    }
    let as_min = occ.iter().filter(|o| o.indices[2] == position).count();
    match as_min {
        0 => Ok(EssentialClass::LargeEssential),
        m if m == occ.len() => Ok(EssentialClass::SmallEssential),
        _ => Err(Error::MixedEssential(position)),
    }
}
