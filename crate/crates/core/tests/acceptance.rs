//! Acceptance suite: ten criteria, one status line each.
//!
//! Runs with a custom harness so the status lines are always printed. The
//! process fails if any criterion fails outright; a failure that is
//! documented and frozen as a fixture is printed as KNOWN-FAIL instead.

#![allow(clippy::needless_range_loop)]

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use permlab::basis::{compute_basis, parse_basis_lines, verify_antichain};
use permlab::enumeration::{
    count_321p1_formula, count_bruteforce, count_structural, factorial, hook_length_count, StructuralPredicateId,
};
use permlab::machines::{buffer_discrepancy, sortable, MachineKind};
use permlab::perm::{avoids_all, classify_essential, contains, essential_positions, is_member_plus_t, perm, Permutation};
use permlab::rsk::{enumerate_syt, longest_decreasing, longest_k21_avoiding, rsk, shape, shape_membership_321p1, Partition};
use permlab::series::{coeff_u64, gf_231p1, gf_321p1, solve_functional_equation_231, Decomposition231};
use permlab::sym::par_find_failure;
use permlab::verify::{parse_discrepancy, stack_discrepancy};
use permlab::EssentialClass;

/// |Av_n(321)+1|, n = 0..=25, expanded independently with a computer
/// algebra system.
const AV321P1: [u64; 26] = [
    1, 1, 2, 6, 23, 103, 488, 2320, 10867, 49971, 225861, 1005821, 4423807, 19255967, 83093364, 355956164, 1515437339,
    6417727259, 27054820649, 113602953089, 475370846639, 1983142721039, 8250982614809, 34246497698633, 141838788939623,
    586322071478503,
];

/// |Av_n(231)+1|, n = 0..=30, same source.
const AV231P1: [u64; 31] = [
    1, 1, 2, 6, 24, 111, 531, 2519, 11726, 53547, 240448, 1064608, 4658952, 20192022, 86807865, 370665585, 1573606410,
    6647552115, 27962334180, 117185243340, 489508952160, 2038937744610, 8471179017990, 35115582053214, 145269385076124,
    599866065025406, 2472955722033776, 10179494703130704, 41844811399520752, 171796056971896588, 704507576218479957,
];

/// Structural counts n = 0..=8 from a separate brute-force script, in
/// `StructuralPredicateId::ALL` order (the four extreme-entry predicates
/// share one sequence).
const STRUCTURAL: [[u64; 9]; 4] = [
    [0, 0, 0, 0, 2, 22, 162, 986, 5382],
    [0, 0, 0, 1, 6, 28, 120, 495, 2002],
    [0, 0, 0, 0, 2, 15, 82, 397, 1808],
    [0, 0, 0, 0, 0, 4, 35, 212, 1104],
];

enum Status {
    Pass(String),
    Known(String),
}

type Outcome = Result<Status, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let e = start.elapsed();
    ensure(e <= limit, || format!("{what} took {e:.1?}, limit {limit:?}"))
}

fn exhaustive(hi: usize, what: &str, pred: impl Fn(&Permutation) -> bool + Sync) -> Result<(), String> {
    for n in 0..=hi {
        if let Some(bad) = par_find_failure(n, &pred) {
            return Err(format!("{what}: counterexample {bad}"));
        }
    }
    Ok(())
}

fn c1_formula_vs_bruteforce() -> Outcome {
    let start = Instant::now();
    let b = [perm("321")];
    for n in 0..=10 {
        let f = count_321p1_formula(n);
        let bf = count_bruteforce(n, &b, 1).map_err(|e| e.to_string())?;
        ensure(f == BigUint::from(bf) && bf == AV321P1[n], || format!("n = {n}: formula {f}, brute force {bf}"))?;
    }
    within(Duration::from_secs(300), start, "n <= 10")?;
    Ok(Status::Pass(format!("n = 0..=10 in {:.1?}", start.elapsed())))
}

fn c2_algebraic_gf_321() -> Outcome {
    let start = Instant::now();
    let s = gf_321p1().expand(25).map_err(|e| e.to_string())?;
    for n in 0..=25 {
        let f = count_321p1_formula(n);
        ensure(BigUint::from(coeff_u64(&s, n)) == f && AV321P1[n] == coeff_u64(&s, n), || {
            format!("n = {n}: series {}, formula {f}", s.coeff(n))
        })?;
    }
    within(Duration::from_secs(1), start, "expansion")?;
    Ok(Status::Pass(format!("n = 0..=25 in {:.1?}", start.elapsed())))
}

fn c3_theorem_gf() -> Outcome {
    let start = Instant::now();
    let closed = gf_231p1().expand(30).map_err(|e| e.to_string())?;
    let fe = solve_functional_equation_231(30);
    ensure(closed == fe, || "closed form and functional equation differ".into())?;
    for (n, &want) in AV231P1.iter().enumerate() {
        ensure(coeff_u64(&closed, n) == want, || format!("coefficient {n}: {} vs {want}", closed.coeff(n)))?;
    }
    let b = [perm("231")];
    for n in 0..=9 {
        let bf = count_bruteforce(n, &b, 1).map_err(|e| e.to_string())?;
        ensure(bf == AV231P1[n], || format!("n = {n}: brute force {bf}"))?;
    }
    within(Duration::from_secs(120), start, "criterion")?;
    Ok(Status::Pass(format!("order 30, brute force n = 0..=9, {:.1?}", start.elapsed())))
}

fn c4_structural_terms() -> Outcome {
    let start = Instant::now();
    let d = Decomposition231::new(30);
    let series = [
        &d.no_greatest_in_231,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.extreme_essential,
        &d.small_essential,
        &d.large_essential,
    ];
    let oracle_row = [0, 1, 1, 1, 1, 2, 3];
    for (i, id) in StructuralPredicateId::ALL.iter().enumerate() {
        for n in 0..=9 {
            let got = count_structural(n, *id).map_err(|e| e.to_string())?;
            let want = coeff_u64(series[i], n);
            ensure(got == want, || format!("{id} at n = {n}: counted {got}, series {want}"))?;
            if n <= 8 {
                ensure(got == STRUCTURAL[oracle_row[i]][n], || format!("{id} at n = {n}: frozen oracle differs"))?;
            }
        }
    }
    Ok(Status::Pass(format!("7 predicates, n = 0..=9, {:.1?}", start.elapsed())))
}

fn c5_rsk() -> Outcome {
    let start = Instant::now();
    let b = [perm("321")];
    exhaustive(8, "shape(P) = shape(Q)", |pi| {
        let pair = rsk(pi);
        pair.p.shape() == pair.q.shape()
    })?;
    for n in 0..=8 {
        let total: BigUint = Partition::all_of(n)
            .iter()
            .map(|l| BigUint::from(enumerate_syt(l).unwrap().len()).pow(2))
            .sum();
        ensure(total == factorial(n), || format!("n = {n}: sum of squares {total}"))?;
    }
    exhaustive(8, "rows = longest decreasing", |pi| shape(pi).len() == longest_decreasing(pi))?;
    exhaustive(8, "Greene", |pi| {
        let sh = shape(pi);
        (2..=4).all(|k| longest_k21_avoiding(pi, k) == sh.parts().iter().take(k - 1).sum::<usize>())
    })?;
    exhaustive(8, "shape membership", |pi| shape_membership_321p1(pi) == is_member_plus_t(pi, &b, 1))?;
    within(Duration::from_secs(300), start, "criterion")?;
    Ok(Status::Pass(format!("n = 0..=8, {:.1?}", start.elapsed())))
}

fn c6_hook_lengths() -> Outcome {
    let start = Instant::now();
    let mut shapes = 0;
    for w in 0..=10 {
        for l in Partition::all_of(w) {
            let f = hook_length_count(&l);
            let e = enumerate_syt(&l).map_err(|e| e.to_string())?.len();
            ensure(f == BigUint::from(e), || format!("{l}: hooks {f}, enumerated {e}"))?;
            shapes += 1;
        }
    }
    within(Duration::from_secs(60), start, "criterion")?;
    Ok(Status::Pass(format!("{shapes} shapes of weight <= 10, {:.1?}", start.elapsed())))
}

fn c7_basis() -> Outcome {
    let start = Instant::now();
    let b = [perm("321")];
    let r = compute_basis(&b, 1, 7).map_err(|e| e.to_string())?;
    let e = &r.elements;
    ensure(e.iter().all(|x| x.len() <= 6), || "element longer than 6".into())?;
    ensure(e.contains(&perm("4321")), || "4321 missing".into())?;
    ensure(verify_antichain(e), || "not an antichain".into())?;
    exhaustive(8, "Av(basis) vs membership", |pi| avoids_all(pi, e) == is_member_plus_t(pi, &b, 1))?;
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/basis_321_t1.txt");
    let frozen = parse_basis_lines(&std::fs::read_to_string(&fixture).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(&frozen == e, || "differs from the frozen fixture".into())?;
    Ok(Status::Pass(format!("{} elements, matches fixture, {:.1?}", e.len(), start.elapsed())))
}

fn c8_machines() -> Outcome {
    use MachineKind::*;
    let start = Instant::now();
    let (b231, b321) = ([perm("231")], [perm("321")]);
    exhaustive(8, "stack = Av(231)", |pi| sortable(pi, Stack, 0).unwrap() == avoids_all(pi, &b231))?;
    exhaustive(8, "queues = Av(321)", |pi| sortable(pi, TwoParallelQueues, 0).unwrap() == avoids_all(pi, &b321))?;
    for t in 1..=2 {
        exhaustive(7, "queues + buffers", |pi| sortable(pi, TwoParallelQueues, t).unwrap() == is_member_plus_t(pi, &b321, t))?;
        for n in 0..=7 {
            let d = buffer_discrepancy(Stack, t, n).map_err(|e| e.to_string())?;
            ensure(d.sortable_non_members.is_empty(), || format!("stack + {t}: sortable non-member at n = {n}"))?;
        }
    }
    within(Duration::from_secs(600), start, "criterion")?;
    // The stack side of the buffer equivalence does not hold; the set of
    // members it cannot sort must match the frozen listing exactly.
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/stack_buffer_discrepancy.txt");
    let frozen = parse_discrepancy(&std::fs::read_to_string(&fixture).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let found = stack_discrepancy();
    ensure(found == frozen, || "stack discrepancy differs from the frozen fixture".into())?;
    let per_t = |t| found.iter().filter(|(u, _)| *u == t).count();
    Ok(Status::Known(format!(
        "t = 0 and two-queue equivalences hold; stack + t buffers misses {} (t = 1) and {} (t = 2) members of Av(231)+t up to length 7, e.g. 2341; {:.1?}",
        per_t(1),
        per_t(2),
        start.elapsed()
    )))
}

fn c9_inequality() -> Outcome {
    let start = Instant::now();
    let f321 = gf_321p1().expand(10).map_err(|e| e.to_string())?;
    let f231 = gf_231p1().expand(10).map_err(|e| e.to_string())?;
    for n in 4..=10 {
        let (a, b) = (coeff_u64(&f321, n), coeff_u64(&f231, n));
        ensure(BigUint::from(a) == count_321p1_formula(n) && a < b, || format!("n = {n}: {a} vs {b}"))?;
    }
    for n in 4..=9 {
        let a = count_bruteforce(n, &[perm("321")], 1).map_err(|e| e.to_string())?;
        let b = count_bruteforce(n, &[perm("231")], 1).map_err(|e| e.to_string())?;
        ensure(a < b, || format!("brute force n = {n}: {a} vs {b}"))?;
    }
    Ok(Status::Pass(format!("series n = 4..=10, brute force n = 4..=9, {:.1?}", start.elapsed())))
}

fn c10_all_or_none() -> Outcome {
    let start = Instant::now();
    let b = [perm("231")];
    let p231 = perm("231");
    let mut checked = 0u64;
    for n in 0..=8 {
        exhaustive_n(n, |pi| {
            if !contains(pi, &p231) || !is_member_plus_t(pi, &b, 1) {
                return true;
            }
            essential_positions(pi).into_iter().all(|e| {
                matches!(classify_essential(pi, e), Ok(EssentialClass::SmallEssential | EssentialClass::LargeEssential))
            })
        })?;
        checked += permlab::sym::par_count(n, |pi| contains(pi, &p231) && is_member_plus_t(pi, &b, 1));
    }
    Ok(Status::Pass(format!("{checked} members containing 231, n <= 8, {:.1?}", start.elapsed())))
}

fn exhaustive_n(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> Result<(), String> {
    match par_find_failure(n, pred) {
        Some(bad) => Err(format!("counterexample {bad}")),
        None => Ok(()),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("closed form for Av(321)+1 = brute force, n <= 10", c1_formula_vs_bruteforce),
        ("algebraic GF for Av(321)+1 = closed form, n <= 25", c2_algebraic_gf_321),
        ("GF for Av(231)+1 = functional equation = brute force", c3_theorem_gf),
        ("structural counts = series coefficients, n <= 9", c4_structural_terms),
        ("RSK identities, n <= 8", c5_rsk),
        ("hook length formula, weight <= 10", c6_hook_lengths),
        ("basis of Av(321)+1", c7_basis),
        ("sorting machines and buffers", c8_machines),
        ("|Av_n(321)+1| < |Av_n(231)+1|, 4 <= n <= 10", c9_inequality),
        ("essential entries are all-or-none, n <= 8", c10_all_or_none),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(Status::Pass(d)) => ("PASS", d),
            Ok(Status::Known(d)) => ("KNOWN-FAIL", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}: {tag:<10} {name} ({detail})", i + 1);
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}
