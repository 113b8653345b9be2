//! Membership in `C+t`: permutations that reach `C = Av(basis)` after
//! deleting at most `t` entries.

use std::collections::HashMap;

use super::pattern::{occurrences, Matcher};
use super::{contains, Permutation};

/// Whether `pi` avoids every pattern in `basis`.
pub fn avoids_all(pi: &Permutation, basis: &[Permutation]) -> bool {
    basis.iter().all(|b| !contains(pi, b))
}

/// Deletion search with a memo keyed on the relabelled residual permutation,
/// since the order in which entries are deleted does not matter.
///
/// Any successful deletion set has to hit every occurrence of every basis
/// pattern, so each step only branches over the positions of one occurrence.
pub struct DeletionSearch<'b> {
    matchers: Vec<Matcher<'b>>,
    memo: HashMap<Permutation, usize>,
}

impl<'b> DeletionSearch<'b> {
    pub fn new(basis: &'b [Permutation]) -> Self {
        Self { matchers: basis.iter().map(Matcher::new).collect(), memo: HashMap::new() }
    }

    fn witness(&self, pi: &Permutation) -> Option<Vec<usize>> {
        self.matchers.iter().find_map(|m| m.first(pi.values()))
    }

    /// Whether at most `t` deletions reach the class.
    pub fn is_member(&mut self, pi: &Permutation, t: usize) -> bool {
        let Some(occ) = self.witness(pi) else {
            return true;
        };
        if t == 0 {
            return false;
        }
        // memo stores the largest budget known to fail
        if let Some(&failed) = self.memo.get(pi) {
            if t <= failed {
                return false;
            }
        }
        let ok = occ.iter().any(|&i| {
            let rest = pi.delete_index(i);
            self.is_member(&rest, t - 1)
        });
        if !ok {
            let e = self.memo.entry(pi.clone()).or_insert(0);
            *e = (*e).max(t);
        }
        ok
    }

    /// Fewest deletions that reach the class, if at most `cap`.
    pub fn distance(&mut self, pi: &Permutation, cap: usize) -> Option<usize> {
        (0..=cap).find(|&t| self.is_member(pi, t))
    }
}

/// Whether `pi` lies in `Av(basis)+t`.
pub fn is_member_plus_t(pi: &Permutation, basis: &[Permutation], t: usize) -> bool {
    DeletionSearch::new(basis).is_member(pi, t)
}

/// Whether `host` has two occurrences of `pattern` on disjoint position sets.
pub fn has_two_disjoint_occurrences(host: &Permutation, pattern: &Permutation) -> bool {
    if 2 * pattern.len() > host.len() {
        return false;
    }
    let occ = occurrences(host, pattern);
    occ.iter().enumerate().any(|(i, a)| occ[i + 1..].iter().any(|b| a.is_disjoint(b)))
}

/// Membership in `Av(321)+1` via its structural description: avoid 4321 and
/// have no two disjoint copies of 321.
pub fn is_member_321p1_structural(pi: &Permutation) -> bool {
    let p4321 = Permutation::reversed_identity(4);
    let p321 = Permutation::reversed_identity(3);
    !contains(pi, &p4321) && !has_two_disjoint_occurrences(pi, &p321)
}
