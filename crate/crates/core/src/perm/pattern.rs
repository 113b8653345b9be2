//! Classical pattern containment by backtracking over index prefixes.
//!
//! When the first `j` pattern entries are matched, the host value chosen for
//! entry `j` must lie strictly between the host values of its nearest
//! already-matched neighbours in pattern-value order. Checking only those two
//! neighbours is enough for order isomorphism, and it also prunes the search.

use serde::Serialize;

use super::{Entry, Permutation};

/// Positions (1-based, strictly increasing) of one copy of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

impl Occurrence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn includes(&self, position: usize) -> bool {
        self.indices.binary_search(&position).is_ok()
    }

    pub fn is_disjoint(&self, other: &Occurrence) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

pub(crate) struct Matcher<'p> {
    pattern: &'p [Entry],
    // For pattern entry j: the earlier entry with the largest smaller value
    // and the earlier entry with the smallest larger value.
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl<'p> Matcher<'p> {
    pub(crate) fn new(pattern: &'p Permutation) -> Self {
        let pattern = pattern.values();
        let k = pattern.len();
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for j in 0..k {
            let v = pattern[j];
            let lo = (0..j).filter(|&i| pattern[i] < v).max_by_key(|&i| pattern[i]);
            let hi = (0..j).filter(|&i| pattern[i] > v).min_by_key(|&i| pattern[i]);
            below.push(lo);
            above.push(hi);
        }
        Self { pattern, below, above }
    }

    /// Calls `visit` with 0-based indices for each occurrence, in
    /// lexicographic order, until it returns `false`. Returns `false` if the
    /// walk was stopped early.
    pub(crate) fn walk(&self, host: &[Entry], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let k = self.pattern.len();
        if k > host.len() {
            return true;
        }
        let mut chosen = Vec::with_capacity(k);
        self.extend(host, 0, &mut chosen, visit)
    }

    fn extend(
        &self,
        host: &[Entry],
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = chosen.len();
        let k = self.pattern.len();
        if j == k {
            return visit(chosen);
        }
        let lo = self.below[j].map_or(0, |i| host[chosen[i]]);
        let hi = self.above[j].map_or(Entry::MAX, |i| host[chosen[i]]);
        // Leave room for the k - j - 1 entries still to be matched.
        let last = host.len() - (k - j);
        for idx in start..=last {
            let v = host[idx];
            if v > lo && v < hi {
                chosen.push(idx);
                let go_on = self.extend(host, idx + 1, chosen, visit);
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn first(&self, host: &[Entry]) -> Option<Vec<usize>> {
        let mut found = None;
        self.walk(host, &mut |idx| {
            found = Some(idx.to_vec());
            false
        });
        found
    }
}

/// Whether `host` contains `pattern` as a classical pattern.
pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    pattern.is_empty() || Matcher::new(pattern).first(host.values()).is_some()
}

/// Every occurrence of `pattern` in `host`, in lexicographic index order.
pub fn occurrences(host: &Permutation, pattern: &Permutation) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if pattern.is_empty() {
        out.push(Occurrence { indices: Vec::new() });
        return out;
    }
    Matcher::new(pattern).walk(host.values(), &mut |idx| {
        out.push(Occurrence { indices: idx.iter().map(|i| i + 1).collect() });
        true
    });
    out
}

pub fn count_occurrences(host: &Permutation, pattern: &Permutation) -> usize {
    if pattern.is_empty() {
        return 1;
    }
    let mut count = 0;
    Matcher::new(pattern).walk(host.values(), &mut |_| {
        count += 1;
        true
    });
    count
}
