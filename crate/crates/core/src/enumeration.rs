//! Exact counts: Catalan numbers, the hook length formula, the closed-form
//! count of `Av_n(321)+1`, brute-force counters over `S_n`, and the
//! structural pieces of `Av(231)+1`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::perm::{contains, essential_positions, occurrences, DeletionSearch, Permutation};
use crate::rsk::Partition;
use crate::sym;
use crate::{Error, Result};

/// Default cap on `n` for [`count_bruteforce`].
pub const BRUTEFORCE_CAP: usize = 10;
/// Default cap on `n` for [`count_structural`].
pub const STRUCTURAL_CAP: usize = 9;

/// Catalan numbers `C_0..=C_n` by `C_{m+1} = Σ C_i C_{m-i}`.
pub fn catalan_numbers(n: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

pub fn catalan(n: usize) -> BigUint {
    catalan_numbers(n).pop().expect("nonempty")
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Number of standard Young tableaux of shape `lambda`: `n!` over the
/// product of hook lengths.
pub fn hook_length_count(lambda: &Partition) -> BigUint {
    let hooks: BigUint = lambda.hooks().into_iter().flatten().map(BigUint::from).product();
    factorial(lambda.weight()) / hooks
}

/// `f^λ` for `λ = (k, l, 1)` via `n!(k-l+1) / ((k+2)·k!·(l+1)·(l-1)!)`,
/// kept as a rational so a non-integral result shows up as an error.
pub fn hook_count_kl1(k: usize, l: usize) -> Result<BigUint> {
    assert!(k >= l && l >= 1, "need k >= l >= 1");
    let n = k + l + 1;
    let num = factorial(n) * BigUint::from(k - l + 1);
    let den = BigUint::from(k + 2) * factorial(k) * BigUint::from(l + 1) * factorial(l - 1);
    integral(BigRational::new(num.into(), den.into()))
}

fn integral(q: BigRational) -> Result<BigUint> {
    if !q.is_integer() {
        return Err(Error::NotIntegral(q.to_string()));
    }
    q.to_integer().to_biguint().ok_or_else(|| Error::NotIntegral(q.to_string()))
}

/// `|Av_n(321)+1| = C_n + Σ_{k=⌊n/2⌋}^{n-2} (n!(2k-n+2) / ((k+2)k!(n-k)(n-k-2)!))²`.
pub fn count_321p1_formula(n: usize) -> BigUint {
    let mut total = catalan(n);
    if n < 3 {
        return total;
    }
    for k in n / 2..=n - 2 {
        let num = factorial(n) * BigUint::from(2 * k + 2 - n);
        let den = BigUint::from(k + 2) * factorial(k) * BigUint::from(n - k) * factorial(n - k - 2);
        let term = integral(BigRational::new(num.into(), den.into())).expect("each summand is f^λ");
        total += &term * &term;
    }
    total
}

/// Number of `π ∈ S_n` in `Av(basis)+t`, by exhaustive parallel scan.
pub fn count_bruteforce(n: usize, basis: &[Permutation], t: usize) -> Result<u64> {
    count_bruteforce_capped(n, basis, t, BRUTEFORCE_CAP)
}

pub fn count_bruteforce_capped(n: usize, basis: &[Permutation], t: usize, cap: usize) -> Result<u64> {
    if n > cap {
        return Err(Error::CapExceeded { what: "n", value: n, cap });
    }
    // one deletion memo per worker chunk, shared across its permutations
    Ok(sym::par_count_with(n, || DeletionSearch::new(basis), |search, pi| search.is_member(pi, t)))
}

/// A counting sequence indexed by `n` from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub class_id: String,
    pub t: usize,
    #[serde(serialize_with = "ser_counts")]
    pub counts: Vec<BigUint>,
}

fn ser_counts<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        // exact: as a string when it does not fit u64
        match c.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl CountTable {
    pub fn new(class_id: impl Into<String>, t: usize, counts: Vec<BigUint>) -> Self {
        Self { class_id: class_id.into(), t, counts }
    }

    /// `n,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{n},{c}\n"));
        }
        s
    }

    /// OEIS b-file: `n count` per line.
    pub fn to_bfile(&self) -> String {
        self.counts.iter().enumerate().map(|(n, c)| format!("{n} {c}\n")).collect()
    }

    /// Reads a b-file back, skipping blank and `#` comment lines.
    pub fn parse_bfile(class_id: &str, t: usize, text: &str) -> Result<Self> {
        let mut counts = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut it = line.split_whitespace();
            let (Some(n), Some(c), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::InvalidToken(line.to_string()));
            };
            let n: usize = n.parse().map_err(|_| Error::InvalidToken(n.to_string()))?;
            if n != counts.len() {
                return Err(Error::InvalidToken(line.to_string()));
            }
            counts.push(c.parse::<BigUint>().map_err(|_| Error::InvalidToken(c.to_string()))?);
        }
        Ok(Self::new(class_id, t, counts))
    }
}

/// The hypotheses of the structural counting results for `Av(231)+1`.
///
/// Every predicate requires membership in `Av(231)+1` and containment of 231.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StructuralPredicateId {
    /// The greatest entry lies in no copy of 231.
    NoGreatestIn231,
    /// The greatest entry is essential.
    EssentialGreatest,
    EssentialLeftmost,
    EssentialRightmost,
    /// The entry 1 is essential.
    EssentialLeast,
    /// Some small essential entry; the greatest entry lies in a 231 and is not
    /// essential.
    SmallEssentialCase,
    /// No small essential entry; a large essential entry other than the
    /// greatest; the greatest entry lies in a 231 and is not essential.
    LargeEssentialCase,
}

impl StructuralPredicateId {
    pub const ALL: [StructuralPredicateId; 7] = [
        Self::NoGreatestIn231,
        Self::EssentialGreatest,
        Self::EssentialLeftmost,
        Self::EssentialRightmost,
        Self::EssentialLeast,
        Self::SmallEssentialCase,
        Self::LargeEssentialCase,
    ];

    pub fn holds(self, pi: &Permutation) -> bool {
        Profile231::of(pi).is_some_and(|p| p.satisfies(self))
    }
}

impl fmt::Display for StructuralPredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The facts about a member of `Av(231)+1 \ Av(231)` that the structural
/// predicates read.
struct Profile231 {
    n: usize,
    greatest: usize,
    least: usize,
    greatest_in_231: bool,
    essential: Vec<usize>,
    small: Vec<usize>,
    large: Vec<usize>,
}

impl Profile231 {
    /// `None` unless `π` contains 231 and lies in `Av(231)+1`.
    fn of(pi: &Permutation) -> Option<Self> {
        let p231 = Permutation::from_raw(vec![2, 3, 1]);
        let occ = occurrences(pi, &p231);
        if occ.is_empty() {
            return None;
        }
        let essential = essential_positions(pi);
        if essential.is_empty() {
            return None;
        }
        let n = pi.len();
        let greatest = pi.position_of(n).expect("n > 0");
        let least = pi.position_of(1).expect("n > 0");
        let (small, large) = essential.iter().partition(|&&e| occ.iter().all(|o| o.indices[2] == e));
        let greatest_in_231 = occ.iter().any(|o| o.includes(greatest));
        Some(Self { n, greatest, least, greatest_in_231, essential, small, large })
    }

    fn is_essential(&self, position: usize) -> bool {
        self.essential.contains(&position)
    }

    fn satisfies(&self, id: StructuralPredicateId) -> bool {
        use StructuralPredicateId::*;
        let g_not_essential = self.greatest_in_231 && !self.is_essential(self.greatest);
        match id {
            NoGreatestIn231 => !self.greatest_in_231,
            EssentialGreatest => self.is_essential(self.greatest),
            EssentialLeftmost => self.is_essential(1),
            EssentialRightmost => self.is_essential(self.n),
            EssentialLeast => self.is_essential(self.least),
            SmallEssentialCase => !self.small.is_empty() && g_not_essential,
            LargeEssentialCase => {
                self.small.is_empty() && self.large.iter().any(|&e| e != self.greatest) && g_not_essential
            }
        }
    }
}

/// The piece of `Av(231)+1` a permutation falls in, following the
/// decomposition `f = c + (no greatest in 231) + (essential greatest) +
/// (small essential) + (large essential)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Piece231 {
    Avoider,
    NoGreatestIn231,
    EssentialGreatest,
    SmallEssentialCase,
    LargeEssentialCase,
}

/// Which pieces of the decomposition `π` satisfies; a member of `Av(231)+1`
/// should land in exactly one, a non-member in none.
pub fn pieces_231(pi: &Permutation) -> Vec<Piece231> {
    let p231 = Permutation::from_raw(vec![2, 3, 1]);
    if !contains(pi, &p231) {
        return vec![Piece231::Avoider];
    }
    let Some(p) = Profile231::of(pi) else {
        return Vec::new();
    };
    use StructuralPredicateId as S;
    [
        (S::NoGreatestIn231, Piece231::NoGreatestIn231),
        (S::EssentialGreatest, Piece231::EssentialGreatest),
        (S::SmallEssentialCase, Piece231::SmallEssentialCase),
        (S::LargeEssentialCase, Piece231::LargeEssentialCase),
    ]
    .into_iter()
    .filter(|(s, _)| p.satisfies(*s))
    .map(|(_, piece)| piece)
    .collect()
}

/// Number of `π ∈ S_n` satisfying the predicate, by direct evaluation.
pub fn count_structural(n: usize, id: StructuralPredicateId) -> Result<u64> {
    count_structural_capped(n, id, STRUCTURAL_CAP)
}

pub fn count_structural_capped(n: usize, id: StructuralPredicateId, cap: usize) -> Result<u64> {
    if n > cap {
        return Err(Error::CapExceeded { what: "n", value: n, cap });
    }
    Ok(sym::par_count(n, |pi| id.holds(pi)))
}

/// Counts for all seven predicates at once, in [`StructuralPredicateId::ALL`] order.
pub fn count_structural_all(n: usize) -> Result<[u64; 7]> {
    if n > STRUCTURAL_CAP {
        return Err(Error::CapExceeded { what: "n", value: n, cap: STRUCTURAL_CAP });
    }
    Ok(sym::par_tally(n, |pi| match Profile231::of(pi) {
        None => [0; 7],
        Some(p) => StructuralPredicateId::ALL.map(|id| u64::from(p.satisfies(id))),
    }))
}

/// `Σ (f^λ)²` over shapes `(k)`, `(k,l)` and `(k,l,1)` of `n`.
pub fn count_321p1_by_shapes(n: usize) -> BigUint {
    Partition::all_of(n)
        .into_iter()
        .filter(|l| l.len() <= 2 || (l.len() == 3 && l.row(2) == 1))
        .map(|l| {
            let f = hook_length_count(&l);
            &f * &f
        })
        .fold(BigUint::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use crate::rsk::enumerate_syt;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        let avoiders = sym::par_count(10, |p| !contains(p, &perm("231")));
        assert_eq!(catalan(10), BigUint::from(avoiders));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_length_count(&part(&[7])), BigUint::from(1u32));
        assert_eq!(hook_length_count(&part(&[2, 1, 1])), BigUint::from(3u32));
        assert_eq!(hook_length_count(&Partition::default()), BigUint::from(1u32));
        for n in 3..=10 {
            for l in 1..=(n - 1) / 2 {
                let k = n - 1 - l;
                let lambda = part(&[k, l, 1]);
                let count = enumerate_syt(&lambda).unwrap().len();
                assert_eq!(hook_count_kl1(k, l).unwrap(), BigUint::from(count), "{lambda}");
                assert_eq!(hook_length_count(&lambda), BigUint::from(count));
            }
        }
    }

    #[test]
    fn formula_examples() {
        let f: Vec<u64> = (0..=5).map(|n| count_321p1_formula(n).to_u64().unwrap()).collect();
        assert_eq!(f, vec![1, 1, 2, 6, 23, 103]);
        for n in 0..=9 {
            assert_eq!(count_321p1_formula(n), count_321p1_by_shapes(n));
        }
    }

    #[test]
    fn bruteforce_examples() {
        let b321 = [perm("321")];
        let b231 = [perm("231")];
        assert_eq!(count_bruteforce(4, &b321, 1), Ok(23));
        assert_eq!(count_bruteforce(3, &b231, 1), Ok(6));
        for n in 0..=9 {
            assert_eq!(BigUint::from(count_bruteforce(n, &b231, 0).unwrap()), catalan(n));
        }
        assert_eq!(
            count_bruteforce(11, &b321, 1),
            Err(Error::CapExceeded { what: "n", value: 11, cap: 10 })
        );
        // t = 2, 3 exploration
        assert_eq!(count_bruteforce(4, &b321, 2), Ok(24));
        // only 654321 keeps a 321 after three deletions
        assert_eq!(count_bruteforce(6, &b321, 3), Ok(719));
    }

    #[test]
    fn structural_small_cases() {
        use StructuralPredicateId::*;
        assert_eq!(count_structural(2, EssentialGreatest), Ok(0));
        assert_eq!(count_structural(3, EssentialGreatest), Ok(1));
        assert!(EssentialGreatest.holds(&perm("231")));
        assert!(!EssentialGreatest.holds(&perm("132")));
        // 2413: the 4 is in no 231
        assert!(!NoGreatestIn231.holds(&perm("2413")));
        assert!(NoGreatestIn231.holds(&perm("2314")));
        assert_eq!(count_structural_all(4).unwrap(), [2, 6, 6, 6, 6, 2, 0]);
        assert!(count_structural(10, EssentialLeast).is_err());
    }

    #[test]
    fn pieces_partition_members() {
        assert_eq!(pieces_231(&perm("132")), vec![Piece231::Avoider]);
        assert_eq!(pieces_231(&perm("231")), vec![Piece231::EssentialGreatest]);
        assert!(pieces_231(&perm("231564")).is_empty());
    }

    #[test]
    fn count_table_formats() {
        let t = CountTable::new("Av(321)+1", 1, (0..=4).map(count_321p1_formula).collect());
        assert_eq!(t.to_csv(), "n,count\n0,1\n1,1\n2,2\n3,6\n4,23\n");
        assert_eq!(t.to_bfile(), "0 1\n1 1\n2 2\n3 6\n4 23\n");
        assert_eq!(CountTable::parse_bfile("Av(321)+1", 1, &format!("# c\n{}", t.to_bfile())).unwrap(), t);
        assert!(CountTable::parse_bfile("x", 1, "1 5\n").is_err());
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"class_id":"Av(321)+1","t":1,"counts":[1,1,2,6,23]}"#);
    }
}
