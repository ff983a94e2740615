//! Limiting probabilities of sentences and events, with Monte-Carlo
//! cross-checks on uniform random 231-avoiders.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalan::CatalanCache;
use crate::error::{Error, Result};
use crate::logic::{Checker, Formula};
use crate::numeric::big_ratio;
use crate::perm::Permutation;
use crate::sample::{Av231Sampler, TreeSampler};
use crate::series::{estimate_kappa, estimate_lambda, CoeffSource};
use crate::types::{FoTypes, Invariant, TypeId, TypeSystem};

/// Added to the estimator error to form the reporting tolerance.
pub const TOLERANCE_FLOOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PositiveLimit,
    ExponentialDecay,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarlo {
    pub n: usize,
    pub samples: usize,
    pub empirical: f64,
    pub stderr: f64,
}

impl MonteCarlo {
    fn from_hits(n: usize, samples: usize, hits: u64) -> Self {
        let p = if samples == 0 { 0.0 } else { hits as f64 / samples as f64 };
        let stderr = if samples == 0 {
            0.0
        } else {
            libm::sqrt(p * (1.0 - p) / samples as f64)
        };
        Self {
            n,
            samples,
            empirical: p,
            stderr,
        }
    }

    /// `|empirical - limit| <= 3 stderr + bias`.
    pub fn agrees_with(&self, limit: f64, bias: f64) -> bool {
        (self.empirical - limit).abs() <= 3.0 * self.stderr + bias
    }
}

/// Limit of `P(σ_n ∈ ⋃_{t ∈ types} C_t)` as `n → ∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    pub types: Vec<TypeId>,
    pub limit: f64,
    pub error: f64,
    /// `error + TOLERANCE_FLOOR`.
    pub tolerance: f64,
    pub classification: Classification,
    /// Largest growth rate over `types` when the limit is zero.
    pub kappa_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub sentence: Formula,
    pub k: usize,
    pub estimate: LimitEstimate,
    pub monte_carlo: Option<MonteCarlo>,
}

/// Types whose representative satisfies `psi`.
pub fn types_of_sentence(ts: &TypeSystem<FoTypes>, psi: &Formula) -> Result<Vec<TypeId>> {
    let depth = psi.qdepth();
    if depth > ts.order() {
        return Err(Error::DepthExceedsOrder { depth, k: ts.order() });
    }
    let checker = Checker::sentence(psi)?;
    Ok(ts.ids().filter(|&t| checker.check(ts.rep(t), &[])).collect())
}

/// Types whose representative has the property `pred`; meaningful when
/// `pred` is constant on classes of the invariant.
pub fn types_of_event<I: Invariant>(ts: &TypeSystem<I>, pred: impl Fn(&Permutation) -> bool) -> Vec<TypeId> {
    ts.ids().filter(|&t| pred(ts.rep(t))).collect()
}

/// Sums the extrapolated limits of the star types in `types`. Without star
/// types the probability decays like `(κ/4)^n` with `κ` the largest growth
/// rate in the set, estimated from `src` (which must then resolve zeros).
pub fn limit_of_types<I: Invariant, S: CoeffSource>(
    ts: &TypeSystem<I>,
    src: &S,
    types: &[TypeId],
) -> Result<LimitEstimate> {
    let mut limit = 0.0;
    let mut error = 0.0;
    let mut any_star = false;
    for &t in types.iter().filter(|&&t| ts.is_star(t)) {
        let l = estimate_lambda(ts, src, t)?;
        limit += l.value;
        error += l.error;
        any_star = true;
    }
    let (classification, kappa_bound) = if any_star {
        (Classification::PositiveLimit, None)
    } else {
        let kappa = types
            .iter()
            .map(|&t| estimate_kappa(src, t))
            .try_fold(0.0f64, |m, k| k.map(|k| m.max(k)))?;
        (Classification::ExponentialDecay, Some(kappa))
    };
    Ok(LimitEstimate {
        types: types.to_vec(),
        limit,
        error,
        tolerance: error + TOLERANCE_FLOOR,
        classification,
        kappa_bound,
    })
}

pub fn limiting_probability<S: CoeffSource>(ts: &TypeSystem<FoTypes>, src: &S, psi: &Formula) -> Result<LimitReport> {
    let types = types_of_sentence(ts, psi)?;
    Ok(LimitReport {
        sentence: psi.clone(),
        k: ts.order(),
        estimate: limit_of_types(ts, src, &types)?,
        monte_carlo: None,
    })
}

/// Counts of each type among `samples` uniform elements of `Av_n(231)`,
/// typed by folding the composition table over the sampled tree.
pub fn type_histogram<I: Invariant>(ts: &TypeSystem<I>, n: usize, samples: usize, seed: u64) -> Vec<u64> {
    let mut sampler = Av231Sampler::new(seed, TreeSampler::Remy);
    let mut counts = vec![0u64; ts.len()];
    for _ in 0..samples {
        counts[ts.fold_tree(&sampler.tree(n)).index()] += 1;
    }
    counts
}

/// Empirical frequency of `types` in a histogram from [`type_histogram`].
pub fn frequency_of(counts: &[u64], n: usize, types: &[TypeId]) -> MonteCarlo {
    let samples = counts.iter().sum::<u64>() as usize;
    let hits = types.iter().map(|t| counts[t.index()]).sum();
    MonteCarlo::from_hits(n, samples, hits)
}

/// Fraction of uniform samples of size `n` whose type lies in `types`.
pub fn monte_carlo_check<I: Invariant>(
    ts: &TypeSystem<I>,
    types: &[TypeId],
    n: usize,
    samples: usize,
    seed: u64,
) -> MonteCarlo {
    frequency_of(&type_histogram(ts, n, samples, seed), n, types)
}

/// Fraction of uniform samples of size `n` satisfying `psi`, by direct
/// model checking; the cost grows like `n^qdepth` per sample.
pub fn monte_carlo_direct(psi: &Formula, n: usize, samples: usize, seed: u64) -> Result<MonteCarlo> {
    let checker = Checker::sentence(psi)?;
    let mut sampler = Av231Sampler::new(seed, TreeSampler::Remy);
    let hits = (0..samples).filter(|_| checker.check(&sampler.sample(n), &[])).count();
    Ok(MonteCarlo::from_hits(n, samples, hits as u64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TauPiReport {
    pub rho: Permutation,
    pub tau: MonteCarlo,
    pub pi: MonteCarlo,
    /// `Cat_{n-|ρ|-1} / Cat_n`, the exact probability of either event.
    pub exact: f64,
    /// `4^{-|ρ|-1}`.
    pub limit: f64,
}

/// Frequencies of `τ_n = ρ` and `π_n = ρ` in the decomposition
/// `σ_n = τ_n ⊕ (1 ⊖ π_n)`.
pub fn tau_pi_distribution_check(rho: &Permutation, n: usize, samples: usize, seed: u64) -> Result<TauPiReport> {
    if !rho.avoids_231() {
        return Err(Error::Contains231(rho.clone()));
    }
    if n == 0 {
        return Err(Error::EmptyDecomposition);
    }
    let mut sampler = Av231Sampler::new(seed, TreeSampler::Remy);
    let (mut tau, mut pi) = (0u64, 0u64);
    for _ in 0..samples {
        let (t, p) = sampler.sample(n).decompose()?;
        tau += u64::from(&t == rho);
        pi += u64::from(&p == rho);
    }
    let exact = if rho.len() < n {
        let cat = CatalanCache::with_order(n);
        big_ratio(cat.at(n - rho.len() - 1), cat.at(n))
    } else {
        0.0
    };
    Ok(TauPiReport {
        rho: rho.clone(),
        tau: MonteCarlo::from_hits(n, samples, tau),
        pi: MonteCarlo::from_hits(n, samples, pi),
        exact,
        limit: libm::pow(0.25, (rho.len() + 1) as f64),
    })
}
