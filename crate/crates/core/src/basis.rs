//! Bases of `C+t` for a finitely based class `C = Av(B)`.
//!
//! A minimal non-member of length `n` has every single deletion inside the
//! class, so it is a one-point extension of a member of length `n - 1`.
//! The search therefore walks the class level by level: the members of length
//! `n - 1` generate every candidate of length `n`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::perm::{contains, DeletionSearch, Permutation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisResult {
    /// Sorted by length, then lexicographically.
    pub elements: Vec<Permutation>,
    pub search_cap: usize,
    /// Length bound within which every basis element must lie.
    pub bound: usize,
    /// `search_cap >= bound`: nothing can be missing.
    pub complete_under_bound: bool,
    /// Number of class members found at each length `0..=search_cap`.
    pub members_per_length: Vec<usize>,
}

impl BasisResult {
    /// Basis size by length.
    pub fn length_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.elements {
            *h.entry(e.len()).or_insert(0) += 1;
        }
        h
    }

    /// One canonical permutation string per line.
    pub fn to_lines(&self) -> String {
        self.elements.iter().map(|e| format!("{e}\n")).collect()
    }

    /// JSON with the element list and the length histogram.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements,
            "search_cap": self.search_cap,
            "bound": self.bound,
            "complete_under_bound": self.complete_under_bound,
            "members_per_length": self.members_per_length,
            "length_histogram": self.length_histogram(),
        })
    }
}

/// Length bound on basis elements of `C+t` when the longest basis element of
/// `C` has length `m`: `m → m(m+1)`, applied `t` times.
pub fn basis_length_bound(m: usize, t: usize) -> usize {
    (0..t).fold(m, |b, _| b.saturating_mul(b + 1))
}

/// Whether no element contains another.
pub fn verify_antichain(elements: &[Permutation]) -> bool {
    elements
        .iter()
        .enumerate()
        .all(|(i, a)| elements.iter().enumerate().all(|(j, b)| i == j || !contains(b, a)))
}

/// Basis of `Av(basis_of_c)+t` among permutations of length at most `max_len`.
pub fn compute_basis(basis_of_c: &[Permutation], t: usize, max_len: usize) -> Result<BasisResult> {
    if basis_of_c.is_empty() || basis_of_c.iter().any(Permutation::is_empty) || !verify_antichain(basis_of_c) {
        return Err(Error::InvalidBasis);
    }
    let m = basis_of_c.iter().map(Permutation::len).max().expect("nonempty");
    if max_len < m {
        return Err(Error::MaxLenBelowPattern { pattern: m, max_len });
    }
    let bound = basis_length_bound(m, t);

    let mut elements = Vec::new();
    let mut members: Vec<Permutation> = vec![Permutation::empty()];
    let mut members_per_length = vec![1];
    for n in 1..=max_len {
        let previous: HashSet<&Permutation> = members.iter().collect();
        let candidates: BTreeSet<Permutation> = members
            .par_iter()
            .flat_map_iter(|p| {
                (1..=n).flat_map(move |pos| (1..=n).map(move |val| p.insert(pos, val).expect("in range")))
            })
            .collect();
        let verdicts: Vec<(Permutation, bool, bool)> = candidates
            .into_par_iter()
            .map_init(
                || DeletionSearch::new(basis_of_c),
                |search, c| {
                    let member = search.is_member(&c, t);
                    let minimal = !member && (0..n).all(|i| previous.contains(&c.delete_index(i)));
                    (c, member, minimal)
                },
            )
            .collect();
        let mut next = Vec::new();
        for (c, member, minimal) in verdicts {
            if member {
                next.push(c);
            } else if minimal {
                elements.push(c);
            }
        }
        members_per_length.push(next.len());
        members = next;
    }
    elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(BasisResult { elements, search_cap: max_len, bound, complete_under_bound: max_len >= bound, members_per_length })
}

/// Reads a basis listing: one permutation per line, `#` comments allowed.
pub fn parse_basis_lines(text: &str) -> Result<Vec<Permutation>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(crate::perm::parse_permutation)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{is_member_plus_t, perm};
    use crate::sym::Permutations;

    // Oracle: minimal non-members found by scanning all of S_n.
    fn brute_basis(basis: &[Permutation], t: usize, max_len: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        for n in 0..=max_len {
            for p in Permutations::new(n) {
                if !is_member_plus_t(&p, basis, t) && (1..=n).all(|i| is_member_plus_t(&p.delete(i).unwrap(), basis, t)) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn basis_of_12_plus_1() {
        let r = compute_basis(&[perm("12")], 1, 4).unwrap();
        let want: Vec<_> = ["123", "2143", "2413", "3142", "3412"].map(perm).to_vec();
        assert_eq!(r.elements, want);
        assert_eq!(r.bound, 6);
        assert!(!r.complete_under_bound);
        let r = compute_basis(&[perm("12")], 1, 6).unwrap();
        assert!(r.complete_under_bound);
        assert_eq!(r.elements, brute_basis(&[perm("12")], 1, 6));
    }

    #[test]
    fn incremental_matches_full_scan() {
        for (basis, t, len) in [(vec![perm("231")], 1, 7), (vec![perm("321")], 1, 7), (vec![perm("21")], 2, 7)] {
            let r = compute_basis(&basis, t, len).unwrap();
            assert_eq!(r.elements, brute_basis(&basis, t, len), "{basis:?}");
            assert!(verify_antichain(&r.elements));
        }
    }

    #[test]
    fn antichain_examples() {
        assert!(verify_antichain(&[perm("4321"), perm("321654")]));
        assert!(!verify_antichain(&[perm("321"), perm("4321")]));
        assert!(verify_antichain(&[]));
    }

    #[test]
    fn bounds() {
        assert_eq!(basis_length_bound(3, 0), 3);
        assert_eq!(basis_length_bound(3, 1), 12);
        assert_eq!(basis_length_bound(3, 2), 156);
        assert_eq!(basis_length_bound(2, 1), 6);
    }

    #[test]
    fn errors() {
        assert_eq!(compute_basis(&[perm("321")], 1, 2), Err(Error::MaxLenBelowPattern { pattern: 3, max_len: 2 }));
        assert_eq!(compute_basis(&[], 1, 4), Err(Error::InvalidBasis));
        assert_eq!(compute_basis(&[perm("21"), perm("321")], 1, 4), Err(Error::InvalidBasis));
    }

    #[test]
    fn output_forms() {
        let r = compute_basis(&[perm("12")], 1, 4).unwrap();
        assert_eq!(r.to_lines(), "1,2,3\n2,1,4,3\n2,4,1,3\n3,1,4,2\n3,4,1,2\n");
        assert_eq!(parse_basis_lines(&format!("# Av(12)+1\n{}", r.to_lines())).unwrap(), r.elements);
        let j = r.to_json();
        assert_eq!(j["length_histogram"]["3"], 1);
        assert_eq!(j["length_histogram"]["4"], 4);
        assert_eq!(j["elements"][0], "1,2,3");
    }
}
