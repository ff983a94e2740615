use proptest::prelude::*;
use toto_core::catalan::{catalan_by_binomial, catalan_by_recurrence};
use toto_core::perm::{enumerate_av231, Permutation};
use toto_core::sample::{rng_from_seed, remy_tree, sample_uniform_av231};
use toto_core::Error;

/// Brute-force 231 test over all triples.
fn has_231(v: &[u32]) -> bool {
    let n = v.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| v[k] < v[i] && v[i] < v[j])))
}

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_avoider(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max, any::<u64>()).prop_map(|(n, seed)| sample_uniform_av231(n, seed))
}

#[test]
fn enumeration_counts_are_catalan() {
    for n in 0..=10 {
        let all = enumerate_av231(n).unwrap();
        assert_eq!(all.len() as u64, catalan_by_recurrence(n).try_into().unwrap());
        assert!(all.windows(2).all(|w| w[0] < w[1]), "sorted and distinct at {n}");
        assert!(all.iter().all(|p| !has_231(p.values())));
    }
}

#[test]
fn catalan_formulas_agree() {
    for n in 0..300 {
        assert_eq!(catalan_by_binomial(n), catalan_by_recurrence(n));
    }
}

#[test]
fn enumeration_is_capped() {
    assert!(matches!(enumerate_av231(20), Err(Error::CapExceeded { .. })));
}

#[test]
fn parse_and_display() {
    let p: Permutation = "3,1,4,2".parse().unwrap();
    assert_eq!(p.values(), &[3, 1, 4, 2]);
    assert_eq!(p.to_string(), "3,1,4,2");
    assert!("3,1,1".parse::<Permutation>().is_err());
    assert!(Permutation::new(vec![0, 1]).is_err());
}

#[test]
fn decomposition_examples() {
    let p: Permutation = "2,1,5,3,4".parse().unwrap();
    let (tau, pi) = p.decompose().unwrap();
    assert_eq!(tau.to_string(), "2,1");
    assert_eq!(pi.to_string(), "1,2");
    assert!(matches!(Permutation::empty().decompose(), Err(Error::EmptyDecomposition)));
    assert!(matches!("2,3,1".parse::<Permutation>().unwrap().decompose(), Err(Error::Contains231(_))));
}

proptest! {
    #[test]
    fn avoidance_matches_brute_force(p in arb_perm(8)) {
        prop_assert_eq!(p.avoids_231(), !has_231(p.values()));
        let pattern: Permutation = "2,3,1".parse().unwrap();
        prop_assert_eq!(p.contains_pattern(&pattern), has_231(p.values()));
    }

    #[test]
    fn decompose_roundtrip(s in arb_avoider(40)) {
        prop_assume!(!s.is_empty());
        let (tau, pi) = s.decompose().unwrap();
        prop_assert!(tau.avoids_231() && pi.avoids_231());
        prop_assert_eq!(tau.len() + pi.len() + 1, s.len());
        prop_assert_eq!(Permutation::compose_231(&tau, &pi), s);
    }

    #[test]
    fn composing_avoiders_avoids(a in arb_avoider(12), b in arb_avoider(12)) {
        let s = Permutation::compose_231(&a, &b);
        prop_assert!(s.avoids_231());
        prop_assert_eq!(s.decompose().unwrap(), (a, b));
    }

    #[test]
    fn sums_preserve_patterns(a in arb_perm(6), b in arb_perm(6)) {
        let d = a.direct_sum(&b);
        let k = a.skew_sum(&b);
        prop_assert_eq!(d.len(), a.len() + b.len());
        prop_assert!(d.contains_pattern(&a) && d.contains_pattern(&b));
        prop_assert!(k.contains_pattern(&a) && k.contains_pattern(&b));
    }

    #[test]
    fn remy_trees_give_avoiders(n in 0usize..200, seed in any::<u64>()) {
        let tree = remy_tree(n, &mut rng_from_seed(seed));
        prop_assert_eq!(tree.len(), n);
        let p = tree.to_permutation();
        prop_assert!(p.avoids_231());
        // the max-Cartesian tree of the image recovers the shape
        let (left, right, root) = p.max_cartesian_tree();
        prop_assert_eq!(p.len(), n);
        prop_assert_eq!(root.is_some(), n > 0);
        prop_assert_eq!(left.len(), n);
        prop_assert_eq!(right.len(), n);
    }
}
