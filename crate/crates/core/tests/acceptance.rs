//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the expensive coefficient tables are
//! computed once and shared.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use toto_core::catalan::catalan_by_binomial;
use toto_core::inference::{
    frequency_of, limit_of_types, limiting_probability, type_histogram, types_of_event, Classification,
};
use toto_core::kakeya::{emit_event_sentence, greedy_subsum, parse_rational, Rational};
use toto_core::logic::{ef_winner, parse_sentence, Checker, TypeInterner, Winner};
use toto_core::perm::{enumerate_av231, Permutation};
use toto_core::sample::{Av231Sampler, TreeSampler};
use toto_core::series::{
    compute_coefficients, compute_scaled, estimate_amplitude, estimate_kappa, eval_jacobian_at, jacobian,
    spectral_radius, CoeffTable,
};
use toto_core::types::{
    build_type_system, verify_composition_exhaustive, BuildOptions, DecompositionShape, Invariant, TypeSystem,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// All permutations of `0..=max` elements (not only avoiders).
fn all_permutations(max: usize) -> Vec<Permutation> {
    fn heap(k: usize, a: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation::new(a.clone()).unwrap());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = vec![Permutation::empty()];
    for n in 1..=max {
        heap(n, &mut (1..=n as u32).collect(), &mut out);
    }
    out
}

struct Shared {
    ts1: TypeSystem,
    ts2: TypeSystem,
    exact1: CoeffTable,
    exact2: CoeffTable,
}

const EXACT_N: usize = 2000;
const SCALED_N: usize = 4000;

fn c1_conservation(s: &Shared, secs: f64) -> Outcome {
    let mut bad = Vec::new();
    for (k, table) in [(1, &s.exact1), (2, &s.exact2)] {
        for n in 0..=EXACT_N {
            if table.total(n) != catalan_by_binomial(n) {
                bad.push((k, n));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("k=1,2 exact Σ_t c_t(n) = Cat_n for n <= {EXACT_N}; {} failures; tables built in {secs:.0}s", bad.len()),
    )
}

fn c2_oracle() -> Outcome {
    let perms = all_permutations(5);
    let mut interner = TypeInterner::new();
    let mut disagreements = 0usize;
    let mut pairs = 0usize;
    for k in 1..=3 {
        let keys: Vec<_> = perms.iter().map(|p| interner.type_of(p, k).unwrap()).collect();
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate().skip(i) {
                let ef = ef_winner(a, b, k).unwrap() == Winner::Duplicator;
                pairs += 1;
                if ef != (keys[i] == keys[j]) {
                    disagreements += 1;
                }
            }
        }
    }
    outcome(
        disagreements == 0,
        format!("{pairs} unordered pairs of sizes <= 5 at k = 1, 2, 3; {disagreements} disagreements"),
    )
}

fn c3_type_invariance() -> Outcome {
    let corpus: Vec<_> = common::SHALLOW.iter().chain(common::DEEP).collect();
    let mut interner = TypeInterner::new();
    let mut classes: BTreeMap<_, Vec<Permutation>> = BTreeMap::new();
    for n in 0..=7 {
        for s in enumerate_av231(n).unwrap() {
            classes.entry(interner.type_of(&s, 3).unwrap()).or_default().push(s);
        }
    }
    let mut broken = Vec::new();
    for (name, text) in &corpus {
        let psi = parse_sentence(text).unwrap();
        assert!(psi.qdepth() <= 3);
        let check = Checker::sentence(&psi).unwrap();
        let split = classes.values().any(|members| {
            let first = check.check(&members[0], &[]);
            members.iter().any(|m| check.check(m, &[]) != first)
        });
        if split {
            broken.push(*name);
        }
    }
    let has_21 = corpus.iter().any(|(_, t)| *t == common::CONTAINS_21);
    outcome(
        broken.is_empty() && corpus.len() >= 12 && has_21,
        format!(
            "{} sentences (depth <= 3) constant on all {} rank-3 classes of Av_n(231), n <= 7; violations {broken:?}",
            corpus.len(),
            classes.len()
        ),
    )
}

fn c4_composition(s: &mut Shared) -> Outcome {
    let r = verify_composition_exhaustive(&mut s.ts2, 4).unwrap();
    outcome(
        r.passed(),
        format!("k=2, components of size <= 4: {} compositions, {} violations", r.checked, r.violations.len()),
    )
}

fn terminal_ok<I: Invariant>(ts: &TypeSystem<I>) -> bool {
    let terminals = ts.condensation().terminal_components();
    terminals.len() == 1 && !ts.is_star(ts.empty_type())
}

fn c5_terminal(s: &Shared) -> Outcome {
    let mut summary = vec![
        ("FO k=1", terminal_ok(&s.ts1), s.ts1.len()),
        ("FO k=2", terminal_ok(&s.ts2), s.ts2.len()),
    ];
    for d in 1..=3 {
        let ts = TypeSystem::build_with(DecompositionShape::new(d).unwrap(), BuildOptions::default()).unwrap();
        summary.push((["shape d=1", "shape d=2", "shape d=3"][d - 1], terminal_ok(&ts), ts.len()));
    }
    outcome(
        summary.iter().all(|x| x.1),
        summary
            .iter()
            .map(|(n, ok, len)| format!("{n}: {len} types {}", if *ok { "ok" } else { "BAD" }))
            .collect::<Vec<_>>()
            .join("; "),
    )
}

fn c6_columns(s: &Shared) -> Outcome {
    let r1 = jacobian(&s.ts1, &s.exact1).check_column_sums();
    let r2 = jacobian(&s.ts2, &s.exact2).check_column_sums();
    outcome(
        r1.passed() && r2.passed(),
        format!(
            "every column of M equals 2zC(z) up to z^{EXACT_N}: k=1 {} coefficients, k=2 {}, mismatches {}",
            r1.checked,
            r2.checked,
            r1.mismatches.len() + r2.mismatches.len()
        ),
    )
}

fn c7_c8_spectral_asymptotics(s: &Shared) -> (Outcome, Outcome) {
    let mut pass7 = true;
    let mut d7 = Vec::new();
    let mut a_sums = Vec::new();
    for (k, ts) in [(1, &s.ts1), (2, &s.ts2)] {
        let sc = compute_scaled(ts, SCALED_N);
        let m = eval_jacobian_at(ts, &sc, 0.25).unwrap();
        let full = spectral_radius(&m.entries).unwrap();
        let bullet = spectral_radius(&m.restrict(&ts.bullet())).unwrap();
        pass7 &= bullet.radius <= 0.98 && (0.95..=1.0).contains(&full.radius) && full.converged && bullet.converged;
        d7.push(format!("k={k}: SR(M•) = {:.4}, SR(M) = {:.6}", bullet.radius, full.radius));
        let amps: Vec<_> = ts.star().iter().map(|&t| estimate_amplitude(&sc, t).unwrap()).collect();
        a_sums.push((
            amps.iter().map(|a| a.value).sum::<f64>(),
            amps.iter().all(|a| a.cauchy && a.value > 0.0),
        ));
    }
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    let kappa_max = s
        .ts2
        .bullet()
        .iter()
        .map(|&t| estimate_kappa(&s.exact2, t).unwrap())
        .fold(0.0, f64::max);
    let a1 = a_sums[0].0;
    let a2 = a_sums[1].0;
    let pass8 = ((a1 - inv_sqrt_pi) / inv_sqrt_pi).abs() <= 0.01
        && (0.553..=0.576).contains(&a2)
        && kappa_max <= 3.95
        && a_sums.iter().all(|x| x.1);
    (
        outcome(pass7, format!("N = {SCALED_N}; {}", d7.join("; "))),
        outcome(
            pass8,
            format!(
                "k=1 Â = {a1:.6} (1/√π = {inv_sqrt_pi:.6}); k=2 Σ_star Â = {a2:.6}; max bullet κ̂ = {kappa_max:.4} (exact N = {EXACT_N})"
            ),
        ),
    )
}

fn c9_limits(s: &Shared) -> Outcome {
    let psi = parse_sentence(common::MAX_FIRST).unwrap();
    let r = limiting_probability(&s.ts2, &s.exact2, &psi).unwrap();
    let max_first = r.estimate.limit;

    // τ_n = 1 is decided by the depth-2 decomposition shape
    let mut shape = TypeSystem::build_with(DecompositionShape::new(2).unwrap(), BuildOptions::default()).unwrap();
    let one = Permutation::identity(1);
    let is_tau_one = |p: &Permutation| !p.is_empty() && p.decompose().unwrap().0 == one;
    let types = types_of_event(&shape, is_tau_one);
    let sentence = Checker::sentence(&parse_sentence(common::TAU_IS_ONE).unwrap()).unwrap();
    let mut consistent = true;
    for n in 1..=9 {
        for p in enumerate_av231(n).unwrap() {
            let t = shape.classify(&p).unwrap().unwrap();
            consistent &= types.contains(&t) == is_tau_one(&p);
            consistent &= sentence.check(&p, &[]) == is_tau_one(&p);
        }
    }
    let table = compute_coefficients(&shape, EXACT_N);
    let exact_count: BigUint = types.iter().map(|&t| table.get(t, EXACT_N)).sum();
    consistent &= exact_count == catalan_by_binomial(EXACT_N - 2);
    let tau = limit_of_types(&shape, &table, &types).unwrap();
    let pass = (max_first - 0.25).abs() <= 5e-3
        && (tau.limit - 0.0625).abs() <= 5e-3
        && r.estimate.classification == Classification::PositiveLimit
        && consistent;
    outcome(
        pass,
        format!(
            "max first -> {max_first:.6}; τ_n = 1 -> {:.6} ({} shape types, exact count Cat_(N-2) at N = {EXACT_N}: {consistent})",
            tau.limit,
            types.len()
        ),
    )
}

fn c10_monte_carlo(s: &Shared) -> Outcome {
    let (n, samples) = (1000, 100_000);
    let t0 = Instant::now();
    let counts = type_histogram(&s.ts2, n, samples, 2024);
    let mut worst: (f64, &str) = (f64::NEG_INFINITY, "");
    let mut pass = true;
    for (name, text) in common::SHALLOW {
        let r = limiting_probability(&s.ts2, &s.exact2, &parse_sentence(text).unwrap()).unwrap();
        let mc = frequency_of(&counts, n, &r.estimate.types);
        let slack = (mc.empirical - r.estimate.limit).abs() - (3.0 * mc.stderr + 0.02);
        pass &= slack <= 0.0;
        if slack > worst.0 {
            worst = (slack, name);
        }
    }
    outcome(
        pass,
        format!(
            "{} sentences, n = {n}, {samples} samples ({:.0}s); worst margin {:.4} ({})",
            common::SHALLOW.len(),
            t0.elapsed().as_secs_f64(),
            -worst.0,
            worst.1
        ),
    )
}

fn c11_uniformity() -> Outcome {
    let cells = enumerate_av231(5).unwrap();
    let mut sampler = Av231Sampler::new(11, TreeSampler::Remy);
    let samples = 100_000usize;
    let mut counts: BTreeMap<Permutation, usize> = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(sampler.sample(5)).or_default() += 1;
    }
    let expected = samples as f64 / cells.len() as f64;
    let stat: f64 = cells
        .iter()
        .map(|c| {
            let o = *counts.get(c).unwrap_or(&0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum();
    let p = 1.0 - ChiSquared::new((cells.len() - 1) as f64).unwrap().cdf(stat);
    outcome(
        p > 1e-3 && counts.len() == 42,
        format!("χ² = {stat:.2} over {} cells, {samples} samples, p = {p:.4}", cells.len()),
    )
}

fn c12_kakeya() -> Outcome {
    let eps = parse_rational("1e-4").unwrap();
    let perms: Vec<Permutation> = (1..=9).flat_map(|n| enumerate_av231(n).unwrap()).collect();
    let mut pass = true;
    let mut worst = Rational::from_integer(0.into());
    let mut mismatches = 0usize;
    for j in 1..=19 {
        let target = Rational::new(j.into(), 20.into());
        let spec = greedy_subsum(&target, &eps).unwrap();
        let defect = (spec.limit() - &target).abs();
        pass &= defect <= eps && spec.validate();
        worst = worst.max(defect);
        let check = Checker::sentence(&emit_event_sentence(&spec)).unwrap();
        mismatches += perms
            .iter()
            .filter(|p| check.check(p, &[]) != spec.holds(p).unwrap())
            .count();
    }
    outcome(
        pass && mismatches == 0,
        format!(
            "19 targets, ε = 1e-4: worst defect {:.2e}; sentence vs decomposition oracle on {} avoiders of size 1..9: {mismatches} mismatches",
            worst.to_f64().unwrap(),
            perms.len()
        ),
    )
}

fn c13_dichotomy(s: &Shared) -> Outcome {
    let counts = type_histogram(&s.ts2, 200, 20_000, 13);
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, text) in [("empty", common::EMPTY), ("single", common::SINGLE)] {
        let r = limiting_probability(&s.ts2, &s.exact2, &parse_sentence(text).unwrap()).unwrap();
        let mc = frequency_of(&counts, 200, &r.estimate.types);
        pass &= r.estimate.classification == Classification::ExponentialDecay && mc.empirical == 0.0;
        parts.push(format!("{name}: decay, κ̂ = {:?}, frequency {} at n = 200", r.estimate.kappa_bound, mc.empirical));
    }
    let r = limiting_probability(&s.ts2, &s.exact2, &parse_sentence(common::CONTAINS_21).unwrap()).unwrap();
    pass &= r.estimate.classification == Classification::PositiveLimit && (r.estimate.limit - 1.0).abs() <= 1e-3;
    parts.push(format!("contains 21: positive, limit {:.6}", r.estimate.limit));
    outcome(pass, parts.join("; "))
}

fn main() {
    let t0 = Instant::now();
    let ts1 = build_type_system(1, 8).unwrap();
    let ts2 = build_type_system(2, 8).unwrap();
    let exact1 = compute_coefficients(&ts1, EXACT_N);
    let exact2 = compute_coefficients(&ts2, EXACT_N);
    let build_secs = t0.elapsed().as_secs_f64();
    let mut shared = Shared {
        ts1,
        ts2,
        exact1,
        exact2,
    };

    let c1 = c1_conservation(&shared, build_secs);
    let c4 = c4_composition(&mut shared);
    let (c7, c8) = c7_c8_spectral_asymptotics(&shared);
    let results = vec![
        (1, "conservation", c1),
        (2, "oracle equivalence", c2_oracle()),
        (3, "type invariance", c3_type_invariance()),
        (4, "composition", c4),
        (5, "unique terminal SCC", c5_terminal(&shared)),
        (6, "Jacobian column sums", c6_columns(&shared)),
        (7, "spectral dichotomy", c7),
        (8, "asymptotics", c8),
        (9, "limits vs exact values", c9_limits(&shared)),
        (10, "Monte-Carlo agreement", c10_monte_carlo(&shared)),
        (11, "sampler uniformity", c11_uniformity()),
        (12, "density grid", c12_kakeya()),
        (13, "dichotomy", c13_dichotomy(&shared)),
    ];

    let mut failed = 0;
    for (i, name, o) in &results {
        println!("{} criterion {i:>2} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.0}s",
        results.len() - failed,
        t0.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
