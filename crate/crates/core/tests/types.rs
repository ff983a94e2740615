use std::sync::OnceLock;

use proptest::prelude::*;
use toto_core::logic::k_equivalent;
use toto_core::perm::{enumerate_av231, Permutation};
use toto_core::sample::sample_uniform_av231;
use toto_core::types::{
    build_type_system, verify_composition_exhaustive, verify_composition_lemma, BuildOptions, DecompositionShape,
    TypeSystem,
};
use toto_core::Error;

fn order_two() -> &'static TypeSystem {
    static TS: OnceLock<TypeSystem> = OnceLock::new();
    TS.get_or_init(|| build_type_system(2, 8).unwrap())
}

#[test]
fn type_counts() {
    let ts1 = build_type_system(1, 8).unwrap();
    assert_eq!((ts1.len(), ts1.star().len(), ts1.bullet().len()), (2, 1, 1));
    let ts2 = build_type_system(2, 8).unwrap();
    assert_eq!((ts2.len(), ts2.star().len(), ts2.bullet().len()), (114, 42, 72));
    for ts in [&ts1, &ts2] {
        assert_eq!(ts.empty_type().index(), 0);
        assert!(!ts.is_star(ts.empty_type()));
        assert_eq!(ts.condensation().terminal_components().len(), 1);
    }
}

#[test]
fn seed_size_does_not_change_the_system() {
    let a = build_type_system(2, 5).unwrap();
    let b = build_type_system(2, 8).unwrap();
    assert_eq!(a.len(), b.len());
    for t in a.ids() {
        assert_eq!(b.fold_type(a.rep(t)).unwrap(), t);
    }
}

#[test]
fn order_three_is_capped() {
    let opts = BuildOptions {
        seed_size: 4,
        max_types: 40,
        ..BuildOptions::default()
    };
    assert!(matches!(TypeSystem::build(3, opts), Err(Error::CapExceeded { .. })));
}

#[test]
fn shape_systems() {
    let ts = TypeSystem::build_with(DecompositionShape::new(2).unwrap(), BuildOptions::default()).unwrap();
    assert_eq!(ts.len(), 26);
    assert_eq!(ts.bullet().len(), 5);
    assert!(DecompositionShape::new(DecompositionShape::MAX_DEPTH + 1).is_err());
}

#[test]
fn exhaustive_composition_order_one() {
    let mut ts = build_type_system(1, 8).unwrap();
    let r = verify_composition_exhaustive(&mut ts, 5).unwrap();
    assert!(r.passed() && r.checked > 0);
}

#[test]
fn random_composition_order_two() {
    let mut ts = build_type_system(2, 8).unwrap();
    let r = verify_composition_lemma(&mut ts, 2000, 7, 7).unwrap();
    assert!(r.passed() && r.checked == 2000);
}

#[test]
fn fold_matches_classification() {
    let mut ts = build_type_system(2, 8).unwrap();
    for n in 0..=9 {
        for p in enumerate_av231(n).unwrap() {
            let folded = ts.fold_type(&p).unwrap();
            assert_eq!(ts.classify(&p).unwrap(), Some(folded));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_respects_equivalence(n in 0usize..12, m in 0usize..12, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ts = order_two();
        let (a, b) = (sample_uniform_av231(n, s1), sample_uniform_av231(m, s2));
        let same = ts.fold_type(&a).unwrap() == ts.fold_type(&b).unwrap();
        prop_assert_eq!(same, k_equivalent(&a, &b, 2).unwrap());
    }

    #[test]
    fn composition_table_is_consistent(n in 0usize..30, m in 0usize..30, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ts = order_two();
        let (a, b) = (sample_uniform_av231(n, s1), sample_uniform_av231(m, s2));
        let whole = ts.fold_type(&Permutation::compose_231(&a, &b)).unwrap();
        prop_assert_eq!(whole, ts.compose(ts.fold_type(&a).unwrap(), ts.fold_type(&b).unwrap()));
    }
}
