use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toto_core::catalan::catalan_by_binomial;
use toto_core::kakeya::{
    check_kakeya_condition, emit_event_sentence, greedy_subsum, lex_first_av231, parse_rational, verify_density_grid,
    weight, Rational,
};
use toto_core::logic::Checker;
use toto_core::perm::enumerate_av231;
use toto_core::Error;

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn weights_and_condition() {
    assert_eq!(weight(0), rat(1, 4));
    assert_eq!(weight(2), rat(1, 64));
    assert_eq!(check_kakeya_condition(30), Ok(()));
}

#[test]
fn total_mass_is_one() {
    // Σ_k 2 Cat_k 4^{-k-1} = 2 C(1/4) / 4 = 1, so the partial sums approach 1
    let partial: Rational = (0..200)
        .map(|k| weight(k) * Rational::from_integer(BigInt::from(catalan_by_binomial(k)) * 2))
        .sum();
    assert!(partial < Rational::one() && Rational::one() - partial < rat(1, 10));
}

#[test]
fn quarter_is_one_level_zero_set() {
    let spec = greedy_subsum(&rat(1, 4), &rat(1, 10_000)).unwrap();
    assert_eq!(spec.limit(), rat(1, 4));
    assert_eq!(spec.f.len() + spec.f_prime.len(), 1);
}

#[test]
fn lex_first_is_sorted_prefix() {
    for k in 0..=6 {
        let all = enumerate_av231(k).unwrap();
        let first = lex_first_av231(k, all.len());
        assert_eq!(first, all);
        assert_eq!(lex_first_av231(k, 2), all[..2.min(all.len())]);
    }
}

#[test]
fn bad_targets() {
    assert!(matches!(greedy_subsum(&rat(3, 2), &rat(1, 100)), Err(Error::TargetOutOfRange(_))));
    assert!(matches!(greedy_subsum(&rat(1, 2), &Rational::zero()), Err(Error::NonPositiveEpsilon)));
    assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
    assert_eq!(parse_rational("1e-4").unwrap(), rat(1, 10_000));
    assert_eq!(parse_rational("3/8").unwrap(), rat(3, 8));
    assert!(parse_rational("x").is_err());
}

#[test]
fn grid_with_monte_carlo() {
    let targets: Vec<_> = [1, 5, 9].iter().map(|&j| rat(j, 10)).collect();
    let grid = verify_density_grid(&targets, &rat(1, 1000), 200, 4000, 1).unwrap();
    for p in grid {
        assert!(p.within);
        let mc = p.monte_carlo.unwrap();
        let limit: f64 = num_traits::ToPrimitive::to_f64(&p.spec.limit()).unwrap();
        assert!(mc.agrees_with(limit, 0.02), "{} vs {limit}", mc.empirical);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn greedy_hits_target(num in 1u32..1000) {
        let target = rat(num as i64, 1000);
        let eps = rat(1, 1000);
        let spec = greedy_subsum(&target, &eps).unwrap();
        prop_assert!((spec.limit() - &target).abs() <= eps);
        prop_assert!(spec.validate());
        prop_assert_eq!(spec.recompute_sum(), spec.sum.clone());
    }

    #[test]
    fn sentence_matches_membership(num in 1u32..100) {
        let spec = greedy_subsum(&rat(num as i64, 100), &rat(1, 100)).unwrap();
        let check = Checker::sentence(&emit_event_sentence(&spec)).unwrap();
        for n in 1..=7 {
            for p in enumerate_av231(n).unwrap() {
                prop_assert_eq!(check.check(&p, &[]), spec.holds(&p).unwrap());
            }
        }
    }
}
