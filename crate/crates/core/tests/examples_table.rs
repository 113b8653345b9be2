//! The worked examples for each operation.

use permlab::basis::{compute_basis, verify_antichain};
use permlab::enumeration::{catalan, count_321p1_formula, count_bruteforce, hook_count_kl1, hook_length_count};
use permlab::machines::{sortability_class, sortable, MachineKind};
use permlab::perm::{
    classify_essential, contains, count_occurrences, essential_positions, has_two_disjoint_occurrences,
    is_member_321p1_structural, is_member_plus_t, occurrences, parse_permutation, perm, Permutation,
};
use permlab::rsk::{enumerate_syt, longest_decreasing, longest_k21_avoiding, shape, Partition};
use permlab::{EssentialClass, Error};

fn idx(o: &permlab::Occurrence) -> Vec<usize> {
    o.indices.clone()
}

#[test]
fn parsing() {
    assert_eq!(parse_permutation("491867532").unwrap().values(), [4, 9, 1, 8, 6, 7, 5, 3, 2]);
    assert_eq!(parse_permutation("1").unwrap().values(), [1]);
    assert_eq!(parse_permutation("3 1 4 2").unwrap().values(), [3, 1, 4, 2]);
    assert_eq!(parse_permutation("3,1,4,2").unwrap(), perm("3142"));
    assert_eq!(parse_permutation("1,1"), Err(Error::DuplicateValue(1)));
    assert!(parse_permutation("1,4").is_err());
    assert!(parse_permutation("1,x").is_err());
}

#[test]
fn containment_and_occurrences() {
    assert!(contains(&perm("491867532"), &perm("51342")));
    assert!(contains(&perm("2314"), &Permutation::empty()));
    assert!(!contains(&perm("2314"), &perm("321")));
    let occ = occurrences(&perm("2314"), &perm("231"));
    assert_eq!(occ.iter().map(idx).collect::<Vec<_>>(), [vec![1, 2, 3]]);
    assert_eq!(occurrences(&perm("4321"), &perm("321")).len(), 4);
    assert!(occurrences(&perm("123"), &perm("231")).is_empty());
    assert_eq!(count_occurrences(&perm("3421"), &perm("321")), 2);
    assert_eq!(count_occurrences(&perm("123"), &perm("321")), 0);
}

#[test]
fn deletion() {
    // The entry 4 of 1742653 sits at position 3.
    assert_eq!(perm("1742653").delete(3).unwrap(), perm("162543"));
    assert_eq!(perm("1742653").delete(5).unwrap(), perm("164253"));
    assert_eq!(perm("1").delete(1).unwrap(), Permutation::empty());
    assert_eq!(perm("231").delete(3).unwrap(), perm("12"));
    assert!(perm("231").delete(4).is_err());
}

#[test]
fn almost_avoidance() {
    let b = [perm("321")];
    assert!(!is_member_plus_t(&perm("4321"), &b, 1));
    assert!(is_member_plus_t(&perm("321"), &b, 1));
    assert!(!is_member_plus_t(&perm("321654"), &b, 1));
    assert!(has_two_disjoint_occurrences(&perm("321654"), &perm("321")));
    assert!(!has_two_disjoint_occurrences(&perm("4321"), &perm("321")));
    assert!(!has_two_disjoint_occurrences(&perm("321"), &perm("321")));
    assert!(!is_member_321p1_structural(&perm("4321")));
    assert!(is_member_321p1_structural(&perm("321")));
    assert!(is_member_321p1_structural(&perm("3421")));
}

#[test]
fn essential_entries() {
    let p = perm("1742653");
    assert_eq!(essential_positions(&p), [3, 7]);
    assert_eq!(classify_essential(&p, 7), Ok(EssentialClass::SmallEssential));
    assert_eq!(classify_essential(&p, 3), Ok(EssentialClass::LargeEssential));
    assert_eq!(classify_essential(&p, 5), Err(Error::NotEssential(5)));
    assert_eq!(essential_positions(&perm("1234")), [1, 2, 3, 4]);
    assert_eq!(essential_positions(&perm("231")), [1, 2, 3]);
    assert_eq!(classify_essential(&perm("2314"), 1), Ok(EssentialClass::LargeEssential));
    assert_eq!(classify_essential(&perm("132"), 1), Err(Error::Avoids231));
}

#[test]
fn rsk_examples() {
    assert_eq!(shape(&perm("3142")).parts(), [2, 2]);
    assert_eq!(longest_decreasing(&perm("491867532")), 6); // 9,8,7,5,3,2
    assert_eq!(longest_k21_avoiding(&perm("4321"), 2), 1);
    assert_eq!(longest_k21_avoiding(&perm("4321"), 3), 2);
    let l = Partition::new(vec![2, 1]).unwrap();
    assert_eq!(enumerate_syt(&l).unwrap().len(), 2);
    assert!(Partition::new(vec![1, 2]).is_err());
}

#[test]
fn counting() {
    assert_eq!(catalan(5), 42u32.into());
    assert_eq!(hook_length_count(&Partition::new(vec![3, 2]).unwrap()), 5u32.into());
    assert_eq!(hook_count_kl1(2, 2).unwrap(), 5u32.into());
    for (k, l) in [(1, 1), (3, 1), (4, 2), (5, 5), (7, 3)] {
        let shape = Partition::new(vec![k, l, 1]).unwrap();
        assert_eq!(hook_count_kl1(k, l).unwrap(), hook_length_count(&shape));
    }
    assert_eq!(count_321p1_formula(4), 23u32.into());
    assert_eq!(count_bruteforce(4, &[perm("321")], 1).unwrap(), 23);
    assert_eq!(count_bruteforce(6, &[perm("321")], 3).unwrap(), 719);
    assert!(count_bruteforce(11, &[perm("321")], 1).is_err());
}

#[test]
fn bases() {
    let r = compute_basis(&[perm("12")], 1, 6).unwrap();
    assert_eq!(r.elements, ["123", "2143", "2413", "3142", "3412"].map(perm));
    assert!(r.complete_under_bound);
    assert!(verify_antichain(&r.elements));
}

#[test]
fn machines() {
    use MachineKind::*;
    assert!(!sortable(&perm("231"), Stack, 0).unwrap());
    assert!(!sortable(&perm("321"), TwoParallelQueues, 0).unwrap());
    assert!(sortable(&perm("4321"), Stack, 1).unwrap());
    for n in 0..=8 {
        assert_eq!(catalan(n), sortability_class(Stack, 0, n).unwrap().into());
        assert_eq!(catalan(n), sortability_class(TwoParallelQueues, 0, n).unwrap().into());
    }
    assert!(sortability_class(Stack, 0, 9).is_err());
    assert!(sortable(&perm("1"), Stack, 4).is_err());
}
