//! Lexicographic enumeration of `S_n` and rank-range parallel scans.
//!
//! Scans split `0..n!` into contiguous rank ranges; each worker unranks the
//! start of its range and then steps with the lexicographic successor.

use rayon::prelude::*;

use crate::perm::{Entry, Permutation};

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Advances `values` to its lexicographic successor; `false` at the last one.
pub fn next_permutation(values: &mut [Entry]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// The permutation of lexicographic rank `rank` (0-based) in `S_n`.
pub fn unrank(n: usize, mut rank: u64) -> Permutation {
    let mut pool: Vec<Entry> = (1..=n as Entry).collect();
    let mut values = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let d = (rank / f) as usize;
        rank %= f;
        values.push(pool.remove(d));
    }
    Permutation::from_raw(values)
}

/// Iterator over `S_n` in lexicographic order.
pub struct Permutations {
    current: Option<Permutation>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Self { current: Some(Permutation::identity(n)) }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_permutation(succ.values_mut()) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

/// Calls `f` on each permutation with rank in `start..start + len`.
pub fn for_each_in_range(n: usize, start: u64, len: u64, mut f: impl FnMut(&Permutation)) {
    if len == 0 {
        return;
    }
    let mut pi = unrank(n, start);
    f(&pi);
    for _ in 1..len {
        if !next_permutation(pi.values_mut()) {
            break;
        }
        f(&pi);
    }
}

fn ranges(n: usize) -> Vec<(u64, u64)> {
    let total = factorial(n);
    let chunks = (rayon::current_num_threads() as u64 * 16).clamp(1, total);
    let size = total.div_ceil(chunks);
    (0..total).step_by(size as usize).map(|s| (s, size.min(total - s))).collect()
}

/// Number of `π ∈ S_n` satisfying `pred`, scanned in parallel.
pub fn par_count(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> u64 {
    ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut c = 0;
            for_each_in_range(n, start, len, |p| c += u64::from(pred(p)));
            c
        })
        .sum()
}

/// Like [`par_count`], with a piece of mutable state per worker chunk.
pub fn par_count_with<S>(
    n: usize,
    init: impl Fn() -> S + Sync,
    pred: impl Fn(&mut S, &Permutation) -> bool + Sync,
) -> u64 {
    ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut state = init();
            let mut c = 0;
            for_each_in_range(n, start, len, |p| c += u64::from(pred(&mut state, p)));
            c
        })
        .sum()
}

/// Members of `S_n` satisfying `pred`, in lexicographic order.
pub fn par_filter(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> Vec<Permutation> {
    ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut out = Vec::new();
            for_each_in_range(n, start, len, |p| {
                if pred(p) {
                    out.push(p.clone())
                }
            });
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Per-permutation tally into `k` buckets, summed over `S_n`.
pub fn par_tally<const K: usize>(n: usize, f: impl Fn(&Permutation) -> [u64; K] + Sync) -> [u64; K] {
    ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut acc = [0u64; K];
            for_each_in_range(n, start, len, |p| {
                for (a, v) in acc.iter_mut().zip(f(p)) {
                    *a += v;
                }
            });
            acc
        })
        .reduce(
            || [0u64; K],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// First counterexample (lexicographically smallest within its chunk) to
/// `pred` over `S_n`, if any.
pub fn par_find_failure(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> Option<Permutation> {
    ranges(n)
        .into_par_iter()
        .filter_map(|(start, len)| {
            let mut bad = None;
            for_each_in_range(n, start, len, |p| {
                if bad.is_none() && !pred(p) {
                    bad = Some(p.clone());
                }
            });
            bad
        })
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn lexicographic_order_and_count() {
        let all: Vec<String> = Permutations::new(3).map(|p| p.compact().unwrap()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutations::new(0).count(), 1);
        assert_eq!(Permutations::new(6).count(), 720);
    }

    #[test]
    fn unrank_agrees_with_iteration() {
        for (r, p) in Permutations::new(5).enumerate() {
            assert_eq!(unrank(5, r as u64), p);
        }
        assert_eq!(unrank(4, 23), perm("4321"));
    }

    #[test]
    fn parallel_scans() {
        assert_eq!(par_count(7, |_| true), 5040);
        assert_eq!(par_count(0, |_| true), 1);
        let odd_first = par_filter(4, |p| p.values()[0] % 2 == 1);
        assert_eq!(odd_first.len(), 12);
        assert!(odd_first.windows(2).all(|w| w[0] < w[1]));
        let [a, b] = par_tally(5, |p| [1, u64::from(p.values()[0] == 1)]);
        assert_eq!((a, b), (120, 24));
        assert_eq!(par_find_failure(4, |p| p.values()[0] != 3), Some(perm("3124")));
        assert_eq!(par_find_failure(4, |_| true), None);
    }
}
