//! Permutations in one-line notation and the operations the rest of the
//! crate is built on.
//!
//! Positions and values are 1-based in every public API: `π.at(1)` is the
//! first entry.

mod almost;
mod essential;
mod pattern;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub use almost::{avoids_all, has_two_disjoint_occurrences, is_member_321p1_structural, is_member_plus_t, DeletionSearch};
pub use essential::{classify_essential, essential_positions, EssentialClass};
pub use pattern::{contains, count_occurrences, occurrences, Occurrence};

/// Storage type for a single entry.
pub type Entry = u16;

/// Longest permutation representable with [`Entry`].
pub const MAX_LEN: usize = Entry::MAX as usize;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<Entry>,
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a bijection onto `1..=n`.
    pub fn new<T: Copy + Into<u64>>(values: &[T]) -> Result<Self> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::TooLong(n));
        }
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(n);
        for &v in values {
            let v: u64 = v.into();
            if v == 0 || v > n as u64 {
                return Err(Error::ValueOutOfRange { value: v as usize, len: n });
            }
            let v = v as usize;
            if seen[v] {
                return Err(Error::DuplicateValue(v));
            }
            seen[v] = true;
            out.push(v as Entry);
        }
        Ok(Self { values: out })
    }

    pub(crate) fn from_raw(values: Vec<Entry>) -> Self {
        debug_assert!(Self::new(&values).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw((1..=n as Entry).collect())
    }

    /// The decreasing permutation `n⋯21`.
    pub fn reversed_identity(n: usize) -> Self {
        Self::from_raw((1..=n as Entry).rev().collect())
    }

    /// The permutation order isomorphic to a sequence of distinct integers.
    pub fn standardize<T: Copy + Ord>(seq: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by_key(|&i| seq[i]);
        let mut values = vec![0; seq.len()];
        for (rank, i) in idx.into_iter().enumerate() {
            values[i] = rank as Entry + 1;
        }
        Self::from_raw(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Entry] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut Vec<Entry> {
        &mut self.values
    }

    /// `π(position)`, 1-based.
    pub fn at(&self, position: usize) -> Result<usize> {
        self.check_position(position)?;
        Ok(self.values[position - 1] as usize)
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: usize) -> Option<usize> {
        self.values.iter().position(|&v| v as usize == value).map(|i| i + 1)
    }

    fn check_position(&self, position: usize) -> Result<()> {
        if position == 0 || position > self.len() {
            Err(Error::PositionOutOfRange { position, len: self.len() })
        } else {
            Ok(())
        }
    }

    /// Removes the entry at `position` and relabels the rest to `1..n-1`.
    pub fn delete(&self, position: usize) -> Result<Self> {
        self.check_position(position)?;
        Ok(self.delete_index(position - 1))
    }

    /// 0-based deletion for hot loops; `index < len`.
    pub(crate) fn delete_index(&self, index: usize) -> Self {
        let removed = self.values[index];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Self { values }
    }

    /// One-point extension: places a new entry of value `value` at `position`
    /// (both in `1..=n+1`), shifting existing values `>= value` up by one.
    pub fn insert(&self, position: usize, value: usize) -> Result<Self> {
        let n = self.len();
        if n + 1 > MAX_LEN {
            return Err(Error::TooLong(n + 1));
        }
        if position == 0 || position > n + 1 {
            return Err(Error::PositionOutOfRange { position, len: n + 1 });
        }
        if value == 0 || value > n + 1 {
            return Err(Error::ValueOutOfRange { value, len: n + 1 });
        }
        let value = value as Entry;
        let mut values: Vec<Entry> = self
            .values
            .iter()
            .map(|&v| if v >= value { v + 1 } else { v })
            .collect();
        values.insert(position - 1, value);
        Ok(Self { values })
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as Entry + 1;
        }
        Self { values }
    }

    pub fn reverse(&self) -> Self {
        Self { values: self.values.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as Entry;
        Self { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    /// Digit-string form such as `491867532`, available when `n <= 9`.
    pub fn compact(&self) -> Option<String> {
        (self.len() <= 9).then(|| self.values.iter().map(|v| char::from(b'0' + *v as u8)).collect())
    }
}

/// Parses either a compact digit string (`n <= 9`) or integers separated by
/// whitespace and/or commas.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Permutation::empty());
    }
    let tokenized = text.contains(|c: char| c == ',' || c.is_whitespace());
    if !tokenized {
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidToken(text.to_string()));
        }
        let digits: Vec<u64> = text.bytes().map(|b| u64::from(b - b'0')).collect();
        return Permutation::new(&digits);
    }
    let mut values = Vec::new();
    // Commas delimit tokens; runs of whitespace count as one delimiter, but
    // an empty slot between commas is an error.
    for chunk in text.split(',') {
        let words: Vec<&str> = chunk.split_whitespace().collect();
        if words.is_empty() {
            return Err(Error::EmptyToken);
        }
        for w in words {
            let v: u64 = w.parse().map_err(|_| Error::InvalidToken(w.to_string()))?;
            values.push(v);
        }
    }
    Permutation::new(&values)
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

/// Canonical comma-separated form, e.g. `4,9,1,8,6,7,5,3,2`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a list of patterns such as `321,4321` or `"2 3 1; 1 2"`.
///
/// Patterns are separated by `;`, or by `,` when every pattern is compact.
pub fn parse_basis(text: &str) -> Result<Vec<Permutation>> {
    let parts: Vec<&str> = if text.contains(';') {
        text.split(';').collect()
    } else {
        text.split(',').collect()
    };
    parts.into_iter().map(|p| parse_permutation(p.trim())).collect()
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn perm(text: &str) -> Permutation {
    parse_permutation(text).unwrap_or_else(|e| panic!("bad permutation {text:?}: {e}"))
}
