use proptest::prelude::*;

use permlab::machines::{replay, sort_witness, MachineKind};
use permlab::perm::{
    contains, count_occurrences, is_member_321p1_structural, is_member_plus_t, occurrences, parse_permutation, perm, Permutation,
};
use permlab::rsk::{rsk, shape, shape_membership_321p1};
use permlab::series::{catalan_gf, sqrt_1m4x, TruncatedSeries};

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| Just((1..=n as u16).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_parses_back(p in permutation(30)) {
        prop_assert_eq!(parse_permutation(&p.to_string()).unwrap(), p.clone());
        if let Some(c) = p.compact() {
            prop_assert_eq!(parse_permutation(&c).unwrap(), p);
        }
    }

    #[test]
    fn deletion_keeps_only_existing_patterns(p in permutation(10), q in permutation(4), i in any::<prop::sample::Index>()) {
        prop_assume!(!p.is_empty());
        let d = p.delete(i.index(p.len()) + 1).unwrap();
        prop_assert!(contains(&p, &d));
        prop_assert!(!contains(&d, &q) || contains(&p, &q));
        prop_assert!(count_occurrences(&d, &q) <= count_occurrences(&p, &q));
    }

    #[test]
    fn insert_then_delete(p in permutation(12), pos in any::<prop::sample::Index>(), val in any::<prop::sample::Index>()) {
        let n = p.len() + 1;
        let (pos, val) = (pos.index(n) + 1, val.index(n) + 1);
        let q = p.insert(pos, val).unwrap();
        prop_assert_eq!(q.at(pos).unwrap(), val);
        prop_assert_eq!(q.delete(pos).unwrap(), p);
    }

    #[test]
    fn symmetries_are_involutions(p in permutation(15)) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        prop_assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn containment_respects_symmetries(p in permutation(9), q in permutation(4)) {
        let c = contains(&p, &q);
        prop_assert_eq!(contains(&p.inverse(), &q.inverse()), c);
        prop_assert_eq!(contains(&p.reverse(), &q.reverse()), c);
        prop_assert_eq!(contains(&p.complement(), &q.complement()), c);
        prop_assert_eq!(occurrences(&p, &q).len(), count_occurrences(&p, &q));
    }

    #[test]
    fn rsk_of_inverse_swaps_tableaux(p in permutation(14)) {
        let (a, b) = (rsk(&p), rsk(&p.inverse()));
        prop_assert_eq!(a.p, b.q);
        prop_assert_eq!(a.q, b.p);
        prop_assert_eq!(shape(&p.reverse()), shape(&p).conjugate());
    }

    #[test]
    fn three_tests_for_av321_plus_one_agree(p in permutation(11)) {
        let b = [perm("321")];
        let d = is_member_plus_t(&p, &b, 1);
        prop_assert_eq!(is_member_321p1_structural(&p), d);
        prop_assert_eq!(shape_membership_321p1(&p), d);
    }

    #[test]
    fn membership_is_monotone(p in permutation(9), t in 0usize..3) {
        for b in [[perm("231")], [perm("321")], [perm("1324")]] {
            prop_assert!(!is_member_plus_t(&p, &b, t) || is_member_plus_t(&p, &b, t + 1));
        }
    }

    #[test]
    fn witnesses_replay_to_sorted_output(p in permutation(8), t in 0usize..3, queues in any::<bool>()) {
        let m = if queues { MachineKind::TwoParallelQueues } else { MachineKind::Stack };
        if let Some(moves) = sort_witness(&p, m, t).unwrap() {
            let out = replay(&p, m, t, &moves).unwrap();
            prop_assert_eq!(out, (1..=p.len() as u16).collect::<Vec<_>>());
        }
    }

    #[test]
    fn series_division_undoes_multiplication(a in prop::collection::vec(-50i64..50, 1..8), b in prop::collection::vec(-50i64..50, 1..8)) {
        let order = 12;
        let (a, mut b) = (TruncatedSeries::from_ints(&a, order), b);
        if b[0] == 0 { b[0] = 1; }
        let b = TruncatedSeries::from_ints(&b, order);
        prop_assert_eq!((&a * &b).div(&b).unwrap(), a);
    }
}

#[test]
fn catalan_series_satisfies_its_equation() {
    let c = catalan_gf(25);
    let x = TruncatedSeries::x(25);
    assert_eq!(&(&(&x * &c) * &c) + &TruncatedSeries::one(25), c);
    let s = sqrt_1m4x(25);
    assert_eq!(&s * &s, TruncatedSeries::from_ints(&[1, -4], 25));
}
