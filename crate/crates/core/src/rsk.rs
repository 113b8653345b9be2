//! Robinson–Schensted row insertion and shape statistics.

use std::fmt;

use serde::Serialize;

use crate::perm::{contains, Entry, Permutation};
use crate::{Error, Result};

/// Largest weight accepted by [`enumerate_syt`].
pub const MAX_SYT_WEIGHT: usize = 12;

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length, 0 past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.row(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Hook length of each cell, row by row.
    pub fn hooks(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| (len - j - 1) + (conj.row(j) - i - 1) + 1).collect())
            .collect()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A standard Young tableau: rows and columns strictly increasing, filled
/// with `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StandardTableau {
    rows: Vec<Vec<Entry>>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let t = Self { rows };
        t.shape_checked()?;
        let n = t.size();
        let mut seen = vec![false; n + 1];
        for &v in t.rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPartition(format!("tableau entries are not 1..={n}")));
            }
            seen[v] = true;
        }
        let rows_ok = t.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = t.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| lo > hi));
        if !(rows_ok && cols_ok) {
            return Err(Error::InvalidPartition("tableau is not standard".into()));
        }
        Ok(t)
    }

    fn shape_checked(&self) -> Result<Partition> {
        Partition::new(self.rows.iter().map(Vec::len).collect())
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// One row per line, entries separated by spaces.
impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// Insertion tableau `p` and recording tableau `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauPair {
    pub p: StandardTableau,
    pub q: StandardTableau,
}

/// Row-inserts `π(1), …, π(n)`; `q` records the cell added at each step.
pub fn rsk(pi: &Permutation) -> TableauPair {
    let mut p: Vec<Vec<Entry>> = Vec::new();
    let mut q: Vec<Vec<Entry>> = Vec::new();
    for (step, &v) in pi.values().iter().enumerate() {
        let mut x = v;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step as Entry + 1]);
                break;
            }
            let r = &mut p[row];
            let at = r.partition_point(|&y| y < x);
            if at == r.len() {
                r.push(x);
                q[row].push(step as Entry + 1);
                break;
            }
            std::mem::swap(&mut r[at], &mut x);
            row += 1;
        }
    }
    TableauPair { p: StandardTableau { rows: p }, q: StandardTableau { rows: q } }
}

/// Shape of the insertion tableau.
pub fn shape(pi: &Permutation) -> Partition {
    rsk(pi).p.shape()
}

/// Longest decreasing subsequence, by an O(n²) dynamic program.
pub fn longest_decreasing(pi: &Permutation) -> usize {
    let v = pi.values();
    let mut best = vec![1usize; v.len()];
    for i in 0..v.len() {
        for j in 0..i {
            if v[j] > v[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Longest subsequence of `π` containing no decreasing subsequence of length
/// `k`, by include/exclude search. Exponential; meant for `n <= 12`.
///
/// Does not use RSK.
pub fn longest_k21_avoiding(pi: &Permutation, k: usize) -> usize {
    assert!(k >= 2, "k must be at least 2");
    struct Search<'a> {
        v: &'a [Entry],
        k: usize,
        best: usize,
        // (value, longest decreasing run ending at it) for kept entries
        kept: Vec<(Entry, usize)>,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if self.kept.len() + (self.v.len() - i) <= self.best {
                return;
            }
            if i == self.v.len() {
                self.best = self.kept.len();
                return;
            }
            let x = self.v[i];
            let run = 1 + self.kept.iter().filter(|&&(y, _)| y > x).map(|&(_, r)| r).max().unwrap_or(0);
            if run < self.k {
                self.kept.push((x, run));
                self.go(i + 1);
                self.kept.pop();
            }
            self.go(i + 1);
        }
    }
    let mut s = Search { v: pi.values(), k, best: 0, kept: Vec::new() };
    s.go(0);
    s.best
}

/// Whether the RSK shape of `π` is `(k)`, `(k,l)` or `(k,l,1)`.
pub fn shape_membership_321p1(pi: &Permutation) -> bool {
    let sh = shape(pi);
    sh.len() <= 2 || (sh.len() == 3 && sh.row(2) == 1)
}

/// All standard Young tableaux of shape `lambda`, by placing `1..=n` one
/// outer corner at a time.
pub fn enumerate_syt(lambda: &Partition) -> Result<Vec<StandardTableau>> {
    let n = lambda.weight();
    if n > MAX_SYT_WEIGHT {
        return Err(Error::CapExceeded { what: "tableau weight", value: n, cap: MAX_SYT_WEIGHT });
    }
    fn place(lambda: &Partition, next: usize, n: usize, rows: &mut Vec<Vec<Entry>>, out: &mut Vec<StandardTableau>) {
        if next > n {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for r in 0..lambda.len() {
            let len = rows[r].len();
            let fits = len < lambda.row(r) && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next as Entry);
                place(lambda, next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.len()];
    place(lambda, 1, n, &mut rows, &mut out);
    Ok(out)
}

/// Whether `π` contains `k⋯21`.
pub fn contains_decreasing(pi: &Permutation, k: usize) -> bool {
    contains(pi, &Permutation::reversed_identity(k))
}
