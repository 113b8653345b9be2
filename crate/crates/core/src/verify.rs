//! Invariant suites, one per module, plus regression fixtures.
//!
//! Every check is exhaustive up to a caller-supplied `nmax`, further capped
//! per check where a sweep would otherwise take too long.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::basis::{compute_basis, parse_basis_lines, verify_antichain, BasisResult};
use crate::enumeration::{
    count_321p1_by_shapes, count_321p1_formula, count_bruteforce_capped, count_structural_all, factorial, hook_length_count,
    pieces_231, CountTable, Piece231, StructuralPredicateId,
};
use crate::machines::{buffer_discrepancy, sortable, MachineKind};
use crate::perm::{
    avoids_all, classify_essential, contains, count_occurrences, essential_positions, is_member_321p1_structural,
    is_member_plus_t, parse_basis, EssentialClass, Permutation,
};
use crate::rsk::{enumerate_syt, longest_decreasing, longest_k21_avoiding, rsk, shape, shape_membership_321p1, Partition};
use crate::series::{
    catalan_gf, gf_231p1, gf_321p1, solve_functional_equation_231, sqrt_1m4x, Decomposition231, TruncatedSeries, DEFAULT_ORDER,
};
use crate::sym::{self, Permutations};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PermCore,
    Rsk,
    Enumeration,
    Series,
    Basis,
    Machines,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [Suite::PermCore, Suite::Rsk, Suite::Enumeration, Suite::Series, Suite::Basis, Suite::Machines];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "perm-core" | "perm" => Suite::PermCore,
            "rsk" => Suite::Rsk,
            "enumeration" => Suite::Enumeration,
            "series" => Suite::Series,
            "basis" => Suite::Basis,
            "machines" => Suite::Machines,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// A failure that is documented and frozen as a fixture; it does not
    /// count against the run.
    pub known_failure: bool,
    pub detail: String,
}

struct Checks {
    suite: Suite,
    out: Vec<CheckOutcome>,
}

impl Checks {
    fn record(&mut self, name: impl Into<String>, result: std::result::Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.out.push(CheckOutcome { suite: self.suite, name: name.into(), passed, known_failure: false, detail });
    }

    fn record_known(&mut self, name: impl Into<String>, result: std::result::Result<String, String>) {
        self.record(name, result);
        let last = self.out.last_mut().expect("just pushed");
        last.known_failure = !last.passed;
    }

    /// Passes when `pred` holds on all of `S_n` for `n` in `lo..=hi`.
    fn exhaustive(&mut self, name: &str, lo: usize, hi: usize, pred: impl Fn(&Permutation) -> bool + Sync) {
        let mut result = Ok(format!("n = {lo}..={hi}"));
        for n in lo..=hi {
            if let Some(bad) = sym::par_find_failure(n, &pred) {
                result = Err(format!("counterexample {bad}"));
                break;
            }
        }
        self.record(name, result);
    }
}

fn p(s: &str) -> Permutation {
    crate::perm::perm(s)
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// Runs one suite (or all of them).
pub fn run_suite(suite: Suite, nmax: usize) -> Vec<CheckOutcome> {
    if suite == Suite::All {
        return Suite::EACH.iter().flat_map(|&s| run_suite(s, nmax)).collect();
    }
    let mut c = Checks { suite, out: Vec::new() };
    match suite {
        Suite::PermCore => perm_core(&mut c, nmax),
        Suite::Rsk => rsk_suite(&mut c, nmax),
        Suite::Enumeration => enumeration_suite(&mut c, nmax),
        Suite::Series => series_suite(&mut c, nmax),
        Suite::Basis => basis_suite(&mut c, nmax),
        Suite::Machines => machines_suite(&mut c, nmax),
        Suite::All => unreachable!(),
    }
    c.out
}

fn perm_core(c: &mut Checks, nmax: usize) {
    let (b231, b321) = (vec![p("231")], vec![p("321")]);
    let n8 = nmax.min(8);
    let n7 = nmax.min(7);
    c.exhaustive("t = 0 membership is avoidance", 0, n8, |pi| {
        [&b231, &b321].iter().all(|b| is_member_plus_t(pi, b, 0) == avoids_all(pi, b))
    });
    c.exhaustive("structural Av(321)+1 test agrees with deletion", 0, n8, |pi| {
        is_member_321p1_structural(pi) == is_member_plus_t(pi, &b321, 1)
    });
    c.exhaustive("C+t is closed under single deletions", 1, n8, |pi| {
        [&b231, &b321].iter().all(|b| {
            !is_member_plus_t(pi, b, 1) || (0..pi.len()).all(|i| is_member_plus_t(&pi.delete_index(i), b, 1))
        })
    });
    c.exhaustive("membership is monotone in t", 0, n7, |pi| {
        [&b231, &b321].iter().all(|b| (0..3).all(|t| !is_member_plus_t(pi, b, t) || is_member_plus_t(pi, b, t + 1)))
    });
    c.exhaustive("essential entries are small or large", 0, n8, |pi| {
        if !is_member_plus_t(pi, &b231, 1) || avoids_all(pi, &b231) {
            return true;
        }
        essential_positions(pi).into_iter().all(|e| {
            matches!(classify_essential(pi, e), Ok(EssentialClass::SmallEssential | EssentialClass::LargeEssential))
        })
    });
    c.exhaustive("Av(321^{<=1}) is inside Av(321)+1", 0, n8, |pi| {
        count_occurrences(pi, &b321[0]) > 1 || is_member_plus_t(pi, &b321, 1)
    });
    let witness = (0..=nmax.min(5))
        .flat_map(Permutations::new)
        .find(|pi| count_occurrences(pi, &b321[0]) >= 2 && is_member_plus_t(pi, &b321, 1));
    c.record(
        "Av(321^{<=1}) is strictly smaller than Av(321)+1",
        witness.map(|w| format!("witness {w}")).ok_or_else(|| "no witness with n <= 5".into()),
    );
    let patterns: Vec<Permutation> = Permutations::new(3).collect();
    c.exhaustive("deletion never creates an occurrence", 1, n7, |pi| {
        (0..pi.len()).all(|i| {
            let d = pi.delete_index(i);
            patterns.iter().all(|s| !contains(&d, s) || contains(pi, s))
        })
    });
}

fn rsk_suite(c: &mut Checks, nmax: usize) {
    let n8 = nmax.min(8);
    let b321 = vec![p("321")];
    c.exhaustive("shape(P) = shape(Q)", 0, n8, |pi| {
        let pair = rsk(pi);
        pair.p.shape() == pair.q.shape() && pair.p.size() == pi.len()
    });
    let mut r = Ok(format!("n = 0..={n8}"));
    for n in 0..=n8 {
        let total: BigUint = Partition::all_of(n)
            .iter()
            .map(|l| {
                let f = BigUint::from(enumerate_syt(l).expect("n <= 12").len());
                &f * &f
            })
            .sum();
        if total != factorial(n) {
            r = Err(format!("n = {n}: sum of squares {total}"));
            break;
        }
    }
    c.record("sum of (f^λ)² is n!", r);
    c.exhaustive("rows = longest decreasing subsequence", 0, n8, |pi| shape(pi).len() == longest_decreasing(pi));
    c.exhaustive("longest k…21-avoider is λ1+…+λ(k-1), k = 2..4", 0, n8, |pi| {
        let sh = shape(pi);
        (2..=4).all(|k| longest_k21_avoiding(pi, k) == sh.parts().iter().take(k - 1).sum::<usize>())
    });
    c.exhaustive("shape test agrees with deletion membership", 0, n8, |pi| {
        shape_membership_321p1(pi) == is_member_plus_t(pi, &b321, 1)
    });
}

fn enumeration_suite(c: &mut Checks, nmax: usize) {
    let (b231, b321) = (vec![p("231")], vec![p("321")]);
    let n10 = nmax.min(10);
    let n9 = nmax.min(9);
    let mut bf321 = Vec::new();
    let mut bf231 = Vec::new();
    let mut r = Ok(format!("n = 0..={n10}"));
    for n in 0..=n10 {
        let b = count_bruteforce_capped(n, &b321, 1, n10).expect("within cap");
        bf321.push(b);
        if BigUint::from(b) != count_321p1_formula(n) || BigUint::from(b) != count_321p1_by_shapes(n) {
            r = Err(format!("n = {n}: brute force {b}, formula {}", count_321p1_formula(n)));
            break;
        }
    }
    c.record("closed form = shape sum = brute force for Av(321)+1", r);
    let mut r = Ok(format!("weights 0..={n10}"));
    'outer: for w in 0..=n10 {
        for l in Partition::all_of(w) {
            let want = enumerate_syt(&l).expect("weight <= 12").len();
            if hook_length_count(&l) != BigUint::from(want) {
                r = Err(format!("{l}: hook formula {}, enumeration {want}", hook_length_count(&l)));
                break 'outer;
            }
        }
    }
    c.record("hook length formula = tableau enumeration", r);
    let f = gf_231p1().expand(DEFAULT_ORDER).expect("well formed");
    let d = Decomposition231::with_f(&f);
    let gfs: [&TruncatedSeries; 7] = [
        &d.no_greatest_in_231,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.small_essential,
        &d.large_essential,
    ];
    let mut r = Ok(format!("n = 0..={n9}, all seven predicates"));
    'outer2: for n in 0..=n9 {
        let counts = count_structural_all(n).expect("within cap");
        for (i, id) in StructuralPredicateId::ALL.iter().enumerate() {
            let want = crate::series::coeff_u64(gfs[i], n);
            if counts[i] != want {
                r = Err(format!("{id} at n = {n}: counted {}, series {want}", counts[i]));
                break 'outer2;
            }
        }
    }
    c.record("structural counts match their series", r);
    let mut r = Ok(format!("n = 0..={n9}"));
    for n in 0..=n9 {
        let [members, multi] = sym::par_tally(n, |pi| {
            let k = pieces_231(pi).len() as u64;
            [u64::from(k >= 1), u64::from(k > 1)]
        });
        let want = count_bruteforce_capped(n, &b231, 1, n9).expect("within cap");
        bf231.push(want);
        if multi > 0 || members != want {
            r = Err(format!("n = {n}: {members} covered, {multi} in several pieces, {want} members"));
            break;
        }
    }
    c.record("decomposition pieces partition Av(231)+1", r);
    let pieces = pieces_231(&p("231"));
    c.record("231 falls in the essential-greatest piece", expect_eq("pieces", pieces, vec![Piece231::EssentialGreatest]).map(|_| String::new()));
    let mut r = Ok(format!("n = 4..={}", n9.min(bf231.len().saturating_sub(1))));
    for n in 4..bf231.len().min(bf321.len()) {
        if bf321[n] >= bf231[n] {
            r = Err(format!("n = {n}: {} vs {}", bf321[n], bf231[n]));
        }
    }
    c.record("|Av_n(321)+1| < |Av_n(231)+1| by brute force", r);
}

fn series_suite(c: &mut Checks, nmax: usize) {
    let order = DEFAULT_ORDER;
    let s = sqrt_1m4x(order);
    let one_m4x = TruncatedSeries::from_ints(&[1, -4], order);
    c.record("s² = 1 - 4x", expect_eq("s²", &s * &s, one_m4x).map(|_| format!("order {order}")));
    let two_xc = (&TruncatedSeries::x(order) * &catalan_gf(order)).scale(&BigRational::from_integer(2.into()));
    c.record("2x·c = 1 - s", expect_eq("2xc", two_xc, &TruncatedSeries::one(order) - &s).map(|_| String::new()));
    let f = gf_231p1().expand(order).expect("well formed");
    c.record(
        "closed form for Av(231)+1 solves the functional equation",
        expect_eq("f", &solve_functional_equation_231(order), &f).map(|_| format!("order {order}")),
    );
    let n9 = nmax.min(9);
    let b231 = vec![p("231")];
    let mut r = Ok(format!("n = 0..={n9}"));
    for n in 0..=n9 {
        let b = count_bruteforce_capped(n, &b231, 1, n9).expect("within cap");
        if crate::series::coeff_u64(&f, n) != b {
            r = Err(format!("n = {n}: series {}, brute force {b}", f.coeff(n)));
            break;
        }
    }
    c.record("closed form for Av(231)+1 = brute force", r);
    let g = gf_321p1().expand(25).expect("well formed");
    let ok = (0..=25).all(|n| g.coeff(n).to_integer() == count_321p1_formula(n).into());
    c.record("closed form for Av(321)+1 = sum formula, n <= 25", if ok { Ok(String::new()) } else { Err("mismatch".into()) });
    let nonneg = |s: &TruncatedSeries| s.coeffs().iter().all(|q| q.is_integer() && !q.is_negative());
    c.record(
        "closed-form coefficients are non-negative integers",
        if nonneg(&f) && nonneg(&g) { Ok(String::new()) } else { Err("negative or fractional coefficient".into()) },
    );
    c.record(
        "c plus the four pieces reproduces f",
        expect_eq("sum", Decomposition231::with_f(&f).total(), f.clone()).map(|_| format!("order {order}")),
    );
}

/// The frozen basis of `Av(321)+1`, computed with `max_len = 7`.
pub fn basis_321p1() -> BasisResult {
    compute_basis(&[p("321")], 1, 7).expect("valid input")
}

fn basis_suite(c: &mut Checks, nmax: usize) {
    let b321 = vec![p("321")];
    let r = basis_321p1();
    let e = &r.elements;
    c.record(
        "Av(321)+1 basis: lengths <= 6 and contains 4321",
        if e.iter().all(|x| x.len() <= 6) && e.contains(&p("4321")) {
            Ok(format!("{} elements", e.len()))
        } else {
            Err(format!("{e:?}"))
        },
    );
    c.record("basis is an antichain", if verify_antichain(e) { Ok(String::new()) } else { Err("comparable pair".into()) });
    let minimal = e.iter().all(|x| {
        !is_member_plus_t(x, &b321, 1) && (0..x.len()).all(|i| is_member_plus_t(&x.delete_index(i), &b321, 1))
    });
    c.record("basis elements are minimal non-members", if minimal { Ok(String::new()) } else { Err("not minimal".into()) });
    c.exhaustive("Av(basis) = Av(321)+1", 0, nmax.min(8), |pi| avoids_all(pi, e) == is_member_plus_t(pi, &b321, 1));
    let mut r = Ok(format!("n = 1..={}", nmax.min(7)));
    for n in 1..=nmax.min(7) {
        let members: Vec<Permutation> = sym::par_filter(n - 1, |q| is_member_plus_t(q, &b321, 1));
        let mut ext = HashSet::new();
        for m in &members {
            for pos in 1..=n {
                for v in 1..=n {
                    ext.insert(m.insert(pos, v).expect("in range"));
                }
            }
        }
        let missing = sym::par_find_failure(n, |pi| {
            let all_in = (0..n).all(|i| is_member_plus_t(&pi.delete_index(i), &b321, 1));
            !all_in || ext.contains(pi)
        });
        if let Some(m) = missing {
            r = Err(format!("{m} has every deletion in the class but is not an extension"));
            break;
        }
    }
    c.record("one-point extensions cover every candidate", r);
}

fn machines_suite(c: &mut Checks, nmax: usize) {
    use MachineKind::*;
    let (b231, b321) = (vec![p("231")], vec![p("321")]);
    let n8 = nmax.min(8);
    let n7 = nmax.min(7);
    c.exhaustive("stack sorts exactly Av(231)", 0, n8, |pi| sortable(pi, Stack, 0) == Ok(avoids_all(pi, &b231)));
    c.exhaustive("two queues sort exactly Av(321)", 0, n8, |pi| {
        sortable(pi, TwoParallelQueues, 0) == Ok(avoids_all(pi, &b321))
    });
    for t in 1..=2 {
        c.exhaustive(&format!("two queues + {t} buffer(s) sort exactly Av(321)+{t}"), 0, n7, |pi| {
            sortable(pi, TwoParallelQueues, t) == Ok(is_member_plus_t(pi, &b321, t))
        });
        c.exhaustive(&format!("stack + {t} buffer(s) sorts only members of Av(231)+{t}"), 0, n7, |pi| {
            !sortable(pi, Stack, t).unwrap() || is_member_plus_t(pi, &b231, t)
        });
        let mut sizes = Vec::new();
        let mut first = None;
        for n in 0..=n7 {
            let d = buffer_discrepancy(Stack, t, n).expect("within guard");
            sizes.push(d.unsortable_members.len());
            first = first.or_else(|| d.unsortable_members.first().cloned());
        }
        let result = match first {
            None => Ok(format!("n = 0..={n7}")),
            Some(w) => Err(format!("unsortable members per n = 0..={n7}: {sizes:?}; first {w}")),
        };
        c.record_known(format!("stack + {t} buffer(s) sorts all of Av(231)+{t}"), result);
    }
    c.exhaustive("an extra buffer never hurts", 0, nmax.min(6), |pi| {
        [Stack, TwoParallelQueues]
            .iter()
            .all(|&m| (0..3).all(|t| !sortable(pi, m, t).unwrap() || sortable(pi, m, t + 1).unwrap()))
    });
}

/// Writes the regression fixtures (the `Av(321)+1` basis and the two
/// counting sequences) into `dir`.
pub fn seed_fixtures(dir: &Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let basis = basis_321p1();
    let mut text = format!("# basis of Av(321)+1\n# max_len {}\n", basis.search_cap);
    text.push_str(&basis.to_lines());
    std::fs::write(dir.join("basis_321_t1.txt"), text)?;
    let t321 = CountTable::new("Av(321)+1", 1, (0..=25).map(count_321p1_formula).collect());
    let f = gf_231p1().expand(DEFAULT_ORDER).expect("well formed");
    let t231 = CountTable::new(
        "Av(231)+1",
        1,
        f.integer_coeffs().expect("integral").into_iter().map(|c| c.to_biguint().expect("non-negative")).collect(),
    );
    std::fs::write(dir.join("av321_t1.b"), t321.to_bfile())?;
    std::fs::write(dir.join("av231_t1.b"), t231.to_bfile())?;
    std::fs::write(dir.join("stack_buffer_discrepancy.txt"), discrepancy_text(&stack_discrepancy()))?;
    Ok(vec!["basis_321_t1.txt".into(), "av321_t1.b".into(), "av231_t1.b".into(), "stack_buffer_discrepancy.txt".into()])
}

/// `(t, π)` for every member of `Av(231)+t`, `t ∈ {1,2}`, `|π| <= 7`, that a
/// stack with `t` buffers cannot sort.
pub fn stack_discrepancy() -> Vec<(usize, Permutation)> {
    let mut out = Vec::new();
    for t in 1..=2 {
        for n in 0..=7 {
            let d = buffer_discrepancy(MachineKind::Stack, t, n).expect("within guard");
            out.extend(d.unsortable_members.into_iter().map(|p| (t, p)));
        }
    }
    out
}

fn discrepancy_text(rows: &[(usize, Permutation)]) -> String {
    let mut s = String::from("# members of Av(231)+t that a stack with t buffers cannot sort, length <= 7\n# t permutation\n");
    for (t, p) in rows {
        s.push_str(&format!("{t} {p}\n"));
    }
    s
}

/// Reads the `t permutation` lines written by [`seed_fixtures`].
pub fn parse_discrepancy(text: &str) -> Result<Vec<(usize, Permutation)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (t, p) = l.split_once(' ').ok_or_else(|| Error::InvalidToken(l.to_string()))?;
            let t = t.parse().map_err(|_| Error::InvalidToken(t.to_string()))?;
            Ok((t, crate::perm::parse_permutation(p)?))
        })
        .collect()
}

/// Compares fixtures found in `dir` against fresh computations.
pub fn check_fixtures(dir: &Path) -> Result<Vec<CheckOutcome>> {
    let mut c = Checks { suite: Suite::All, out: Vec::new() };
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).ok();
    if let Some(text) = read("basis_321_t1.txt") {
        let frozen = parse_basis_lines(&text)?;
        c.record("fixture basis_321_t1.txt", expect_eq("basis", basis_321p1().elements, frozen).map(|_| String::new()));
    }
    if let Some(text) = read("av321_t1.b") {
        let table = CountTable::parse_bfile("Av(321)+1", 1, &text)?;
        let fresh: Vec<BigUint> = (0..table.counts.len()).map(count_321p1_formula).collect();
        c.record("fixture av321_t1.b", expect_eq("counts", fresh, table.counts).map(|_| String::new()));
    }
    if let Some(text) = read("av231_t1.b") {
        let table = CountTable::parse_bfile("Av(231)+1", 1, &text)?;
        let order = table.counts.len().saturating_sub(1);
        let f = gf_231p1().expand(order).expect("well formed");
        let fresh: Vec<BigUint> =
            f.integer_coeffs()?.into_iter().map(|c| c.to_biguint().ok_or(Error::NotIntegral(c.to_string()))).collect::<Result<_>>()?;
        c.record("fixture av231_t1.b", expect_eq("counts", fresh, table.counts).map(|_| String::new()));
    }
    if let Some(text) = read("stack_buffer_discrepancy.txt") {
        let frozen = parse_discrepancy(&text)?;
        c.record("fixture stack_buffer_discrepancy.txt", expect_eq("set", stack_discrepancy(), frozen).map(|_| String::new()));
    }
    Ok(c.out)
}

/// Parses a basis flag value, rejecting empty patterns.
pub fn parse_class_basis(text: &str) -> Result<Vec<Permutation>> {
    let b = parse_basis(text)?;
    if b.is_empty() || b.iter().any(Permutation::is_empty) {
        return Err(Error::InvalidBasis);
    }
    Ok(b)
}
