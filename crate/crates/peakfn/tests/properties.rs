//! Property tests for the structural invariants: statistics under symmetry,
//! containment against a naive oracle, product/conversion laws, and
//! serialization round trips.

use proptest::prelude::*;

use peakfn::perm::{contains_pattern, shuffle_perms, IndexSet, PatternSet, Permutation};
use peakfn::qsym::{compositions_of, representative_perm, Basis, Composition, QsymExpr};
use peakfn::schurq::{peak_sets_of_degree, SchurQExpansion};
use peakfn::tableau::StrictPartition;

/// A permutation of the given size, built by ranking a random key vector.
fn arb_permutation(max_size: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_size).prop_flat_map(|n| {
        prop::collection::vec(any::<u32>(), n).prop_map(|keys| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            let mut entries = vec![0u8; keys.len()];
            for (rank, &i) in order.iter().enumerate() {
                entries[i] = (rank + 1) as u8;
            }
            Permutation::new(entries).expect("ranking yields a permutation")
        })
    })
}

/// Two independent permutations of one shared size.
fn arb_perm_pair(max_size: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (0..=max_size).prop_flat_map(|n| {
        let one = prop::collection::vec(any::<u32>(), n).prop_map(|keys| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            let mut entries = vec![0u8; keys.len()];
            for (rank, &i) in order.iter().enumerate() {
                entries[i] = (rank + 1) as u8;
            }
            Permutation::new(entries).expect("ranking yields a permutation")
        });
        (one.clone(), one)
    })
}

fn arb_composition(max_weight: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u8..=4, 0..=max_weight / 2).prop_map(move |mut parts| {
        let mut weight: usize = parts.iter().map(|&p| p as usize).sum();
        while weight > max_weight {
            let p = parts.pop().expect("nonempty while overweight") as usize;
            weight -= p;
        }
        Composition::new(parts).expect("positive parts")
    })
}

proptest! {
    #[test]
    fn peak_sets_are_sparse_and_reflect(p in arb_permutation(12)) {
        let peaks = p.peak_set();
        prop_assert!(peaks.is_peak_set());
        let n = p.size();
        let rev = p.reverse().peak_set();
        prop_assert_eq!(peaks.len(), rev.len());
        let reflected: Vec<u8> = peaks.elements().iter().rev().map(|&s| (n + 1) as u8 - s).collect();
        prop_assert_eq!(rev, IndexSet::new(reflected, n).unwrap());
    }

    #[test]
    fn containment_matches_subsequence_semantics(
        p in arb_permutation(8),
        t in arb_permutation(4),
    ) {
        prop_assume!(t.size() >= 1);
        fn any_subsequence(word: &[u8], t: &Permutation, start: usize, sub: &mut Vec<u8>) -> bool {
            if sub.len() == t.size() {
                return &Permutation::standardize(sub) == t;
            }
            for i in start..word.len() {
                sub.push(word[i]);
                if any_subsequence(word, t, i + 1, sub) {
                    return true;
                }
                sub.pop();
            }
            false
        }
        let fast = contains_pattern(p.as_slice(), t.as_slice());
        let slow = any_subsequence(p.as_slice(), &t, 0, &mut Vec::new());
        prop_assert_eq!(fast, slow, "word {} pattern {}", p, t);
    }

    #[test]
    fn shuffle_count_is_binomial(p in arb_permutation(5), q in arb_permutation(5)) {
        let shuffles = shuffle_perms(&p, &q);
        let m = p.size();
        let n = q.size();
        let expected: usize = num_integer::binomial(m as u64 + n as u64, m as u64) as usize;
        prop_assert_eq!(shuffles.len(), expected);
        for rho in &shuffles {
            prop_assert_eq!(rho.size(), m + n);
        }
    }

    #[test]
    fn composition_set_round_trip(c in arb_composition(10)) {
        prop_assert_eq!(Composition::from_set(&c.comp_set()), c);
    }

    #[test]
    fn refinement_count_is_a_power_of_two(c in arb_composition(8)) {
        let refs = peakfn::qsym::refinements(&c);
        let expected: usize = c
            .parts()
            .iter()
            .map(|&p| 1usize << (p as usize - 1))
            .product();
        prop_assert_eq!(refs.len(), expected);
        for r in &refs {
            prop_assert_eq!(r.weight(), c.weight());
        }
    }

    #[test]
    fn representative_has_requested_peaks(p in arb_permutation(10)) {
        let s = p.peak_set();
        let rep = representative_perm(&s).unwrap();
        prop_assert_eq!(rep.peak_set(), s);
    }

    #[test]
    fn qsym_json_round_trip((p, q) in arb_perm_pair(8)) {
        let e = QsymExpr::k_term(p.peak_set(), 3)
            .unwrap()
            .add(&QsymExpr::k_term(q.peak_set(), -2).unwrap())
            .unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: QsymExpr = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn conversions_are_linear((p, q) in arb_perm_pair(6)) {
        let a = QsymExpr::k_term(p.peak_set(), 2).unwrap();
        let b = QsymExpr::k_term(q.peak_set(), 5).unwrap();
        let sum_then_convert = a.add(&b).unwrap().to_m();
        let convert_then_sum = a.to_m().add(&b.to_m()).unwrap();
        prop_assert_eq!(sum_then_convert, convert_then_sum);
    }
}

#[test]
fn peak_product_oracle_over_all_small_peak_sets() {
    for n1 in 0..=4usize {
        for n2 in 0..=4usize {
            for s1 in peak_sets_of_degree(n1) {
                for s2 in peak_sets_of_degree(n2) {
                    let a = QsymExpr::k_term(s1.clone(), 1).unwrap();
                    let b = QsymExpr::k_term(s2.clone(), 1).unwrap();
                    let fast = a.peak_product(&b).unwrap();
                    assert_eq!(fast.degree(), n1 + n2);
                    assert_eq!(fast.basis(), Basis::K);
                    let oracle = a.to_m().quasi_shuffle_product(&b.to_m()).unwrap();
                    assert_eq!(fast.to_m(), oracle, "K({s1})·K({s2})");
                }
            }
        }
    }
}

#[test]
fn schurq_json_round_trip_with_rationals() {
    // Hand-built expansion with a non-integral coefficient to pin the
    // fraction syntax.
    let json = r#"{"degree":4,"basis":"Q","terms":[{"index":[4],"coeff":"3/2"},{"index":[3,1],"coeff":"-7"}]}"#;
    let e: SchurQExpansion = serde_json::from_str(json).unwrap();
    assert!(!e.is_integral());
    assert!(!e.is_positive());
    let back = serde_json::to_string(&e).unwrap();
    assert_eq!(back, json);
    assert_eq!(
        e.coeff(&StrictPartition::new(vec![3, 1]).unwrap()),
        peakfn::pattern::rational(-7)
    );
}

#[test]
fn all_compositions_have_distinct_sets() {
    for n in 0..=8 {
        let comps = compositions_of(n);
        let sets: std::collections::BTreeSet<Vec<u8>> = comps
            .iter()
            .map(|c| c.comp_set().elements().to_vec())
            .collect();
        assert_eq!(sets.len(), comps.len());
    }
}

#[test]
fn empty_pattern_set_is_the_full_symmetric_group() {
    for n in 0..=6usize {
        let all = peakfn::perm::enumerate_av(n, &PatternSet::none());
        let expected: u64 = (1..=n as u64).product();
        assert_eq!(all.len() as u64, expected.max(1));
    }
}
