//! Events `E_{F,F'} = (τ_n ∈ F) ∨ (π_n ∈ F')` with prescribed limiting
//! probability, and first-order sentences defining them.
//!
//! `P(τ_n = ρ) → 4^{-|ρ|-1}` and likewise for `π_n`, so the limit of
//! `E_{F,F'}` is `Σ_k (|F_k| + |F'_k|) 4^{-k-1}`. The weights `4^{-k-1}`,
//! each with multiplicity `2 Cat_k`, sum to 1 and every weight is at most
//! the sum of those after it, so greedy selection reaches any target.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalan::CatalanCache;
use crate::error::{Error, Result};
use crate::inference::MonteCarlo;
use crate::logic::Formula;
use crate::perm::Permutation;
use crate::sample::{Av231Sampler, TreeSampler};

/// Exact rational; prints as `a/b`, or `a` when integral.
pub type Rational = BigRational;

/// Chosen prefix and suffix sets, lexicographically sorted within each size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventSpec {
    pub f: Vec<Permutation>,
    pub f_prime: Vec<Permutation>,
    /// The event is the complement of `E_{F,F'}`.
    pub negated: bool,
    /// `Σ_k (|F_k| + |F'_k|) 4^{-k-1}`.
    pub sum: BigRational,
}

impl EventSpec {
    /// Limiting probability of the event.
    pub fn limit(&self) -> BigRational {
        if self.negated {
            BigRational::one() - &self.sum
        } else {
            self.sum.clone()
        }
    }

    /// `(|F_k|, |F'_k|)` for every size that occurs.
    pub fn level_counts(&self) -> BTreeMap<usize, (usize, usize)> {
        let mut out = BTreeMap::new();
        for p in &self.f {
            out.entry(p.len()).or_insert((0, 0)).0 += 1;
        }
        for p in &self.f_prime {
            out.entry(p.len()).or_insert((0, 0)).1 += 1;
        }
        out
    }

    /// The weighted sum recomputed from the sets themselves.
    pub fn recompute_sum(&self) -> BigRational {
        self.f.iter().chain(&self.f_prime).map(|p| weight(p.len())).sum()
    }

    pub fn max_size(&self) -> usize {
        self.f.iter().chain(&self.f_prime).map(Permutation::len).max().unwrap_or(0)
    }

    /// Membership by decomposing a nonempty `sigma`.
    pub fn holds(&self, sigma: &Permutation) -> Result<bool> {
        let (tau, pi) = sigma.decompose()?;
        let hit = self.f.contains(&tau) || self.f_prime.contains(&pi);
        Ok(hit != self.negated)
    }

    /// Checks the invariants: sets of avoiders, at most `Cat_k` of each size,
    /// and a consistent sum in `[0, 1]`.
    pub fn validate(&self) -> bool {
        let mut cat = CatalanCache::new();
        let sorted = |v: &[Permutation]| v.windows(2).all(|w| (w[0].len(), &w[0]) < (w[1].len(), &w[1]));
        let sizes_ok = self.level_counts().iter().all(|(&k, &(a, b))| {
            let c = cat.get(k).clone();
            BigUint::from(a) <= c && BigUint::from(b) <= c
        });
        self.f.iter().chain(&self.f_prime).all(Permutation::avoids_231)
            && sorted(&self.f)
            && sorted(&self.f_prime)
            && sizes_ok
            && self.recompute_sum() == self.sum
            && !self.sum.is_negative()
            && self.sum <= BigRational::one()
    }
}

/// `4^{-k-1}`.
pub fn weight(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (2 * k + 2))
}

/// Greedy subsum of the weight sequence approximating `target` from below
/// within `epsilon`. Targets above 1/2 are reached as the complement of
/// an event for `1 - target`, which keeps the sets small.
pub fn greedy_subsum(target: &BigRational, epsilon: &BigRational) -> Result<EventSpec> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if target.is_negative() || *target > BigRational::one() {
        return Err(Error::TargetOutOfRange(target.to_string()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let negated = *target > half;
    let goal = if negated {
        BigRational::one() - target
    } else {
        target.clone()
    };
    let mut cat = CatalanCache::new();
    let mut sum = BigRational::zero();
    let (mut f, mut f_prime) = (Vec::new(), Vec::new());
    let mut k = 0;
    while &goal - &sum > *epsilon {
        let w = weight(k);
        let room = ((&goal - &sum) / &w).floor().to_integer();
        let avail = BigInt::from(cat.get(k).clone()) * 2;
        let take = room.min(avail).to_usize().expect("selection count fits in memory");
        if take > 0 {
            let c = cat.get(k).to_usize().unwrap_or(usize::MAX);
            let perms = lex_first_av231(k, take.min(c));
            let in_f = take.min(c);
            f.extend(perms[..in_f].iter().cloned());
            f_prime.extend(perms[..take - in_f].iter().cloned());
            sum += w * BigInt::from(take);
        }
        k += 1;
    }
    Ok(EventSpec {
        f,
        f_prime,
        negated,
        sum,
    })
}

/// The first `count` elements of `Av_k(231)` in lexicographic order.
pub fn lex_first_av231(k: usize, count: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<u32>, used: &mut [bool], k: usize, count: usize, out: &mut Vec<Permutation>) {
        if out.len() == count {
            return;
        }
        if prefix.len() == k {
            out.push(Permutation::new(prefix.clone()).expect("built from distinct values"));
            return;
        }
        for v in 1..=k as u32 {
            if used[v as usize] || closes_231(prefix, v) {
                continue;
            }
            used[v as usize] = true;
            prefix.push(v);
            go(prefix, used, k, count, out);
            prefix.pop();
            used[v as usize] = false;
            if out.len() == count {
                return;
            }
        }
    }
    let mut out = Vec::with_capacity(count);
    go(&mut Vec::with_capacity(k), &mut vec![false; k + 1], k, count, &mut out);
    out
}

/// Whether appending `a` creates `b c a` with `a < b < c`.
fn closes_231(prefix: &[u32], a: u32) -> bool {
    // smallest candidate `b` seen so far
    let mut min_b = u32::MAX;
    for &x in prefix.iter().filter(|&&x| x > a) {
        if x > min_b {
            return true;
        }
        min_b = x;
    }
    false
}

/// Checks `w_i <= Σ_{j > i} w_j` for every weight of size at most
/// `max_level`, bounding each tail from below by a finite exact sum.
/// Returns the first failing size.
pub fn check_kakeya_condition(max_level: usize) -> core::result::Result<(), usize> {
    const HORIZON: usize = 8;
    let mut cat = CatalanCache::new();
    let level_mass = |cat: &mut CatalanCache, j: usize| weight(j) * BigInt::from(cat.get(j).clone()) * BigInt::from(2);
    for k in 0..=max_level {
        // the last copy of w_k has the smallest tail within its level
        let tail: BigRational = (k + 1..=k + HORIZON).map(|j| level_mass(&mut cat, j)).sum();
        if weight(k) > tail {
            return Err(k);
        }
    }
    Ok(())
}

fn var(i: usize) -> String {
    format!("x{i}")
}

/// `m` is the maximum in value.
fn is_max(m: &str) -> Formula {
    Formula::forall("y", Formula::Or(vec![Formula::eq("y", m), Formula::lt_v("y", m)]))
}

/// The elements on one side of `m` realize exactly `rho`: consecutive
/// witnesses `x1 <_P ... <_P xr` with `rho`'s value order, and nothing else
/// on that side.
fn side_is(rho: &Permutation, m: &str, before: bool) -> Formula {
    let side = |x: &str| {
        if before {
            Formula::lt_p(x, m)
        } else {
            Formula::lt_p(m, x)
        }
    };
    let r = rho.len();
    let vals = rho.values();
    let named = Formula::Or((1..=r).map(|i| Formula::eq("y", &var(i))).collect());
    let mut body = Formula::forall("y", Formula::implies(side("y"), named));
    for i in (1..=r).rev() {
        let xi = var(i);
        let mut guard = vec![side(&xi)];
        if i > 1 {
            guard.push(Formula::lt_p(&var(i - 1), &xi));
        }
        for j in 1..i {
            let xj = var(j);
            guard.push(if vals[j - 1] < vals[i - 1] {
                Formula::lt_v(&xj, &xi)
            } else {
                Formula::lt_v(&xi, &xj)
            });
        }
        guard.push(body);
        body = Formula::exists(&xi, Formula::And(guard));
    }
    body
}

/// A sentence defining the event of `spec` on nonempty avoiders, of
/// quantifier depth at most `spec.max_size() + 2`.
pub fn emit_event_sentence(spec: &EventSpec) -> Formula {
    let mut cases: Vec<Formula> = spec.f.iter().map(|r| side_is(r, "m", true)).collect();
    cases.extend(spec.f_prime.iter().map(|r| side_is(r, "m", false)));
    let event = Formula::exists("m", Formula::And(vec![is_max("m"), Formula::Or(cases)]));
    if spec.negated {
        Formula::not(event)
    } else {
        event
    }
}

/// One target of a density check.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityPoint {
    pub target: BigRational,
    pub spec: EventSpec,
    /// `|limit - target|`.
    pub defect: BigRational,
    pub within: bool,
    pub monte_carlo: Option<MonteCarlo>,
}

/// Builds an event for every target and compares its exact limit with the
/// target. With `samples > 0` the event frequency among uniform samples of
/// size `n` is measured by decomposition.
pub fn verify_density_grid(
    targets: &[BigRational],
    epsilon: &BigRational,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<DensityPoint>> {
    targets
        .iter()
        .enumerate()
        .map(|(i, target)| {
            let spec = greedy_subsum(target, epsilon)?;
            let defect = (spec.limit() - target).abs();
            let monte_carlo = if samples > 0 && n > 0 {
                let mut sampler = Av231Sampler::new(seed.wrapping_add(i as u64), TreeSampler::Remy);
                let mut hits = 0u64;
                for _ in 0..samples {
                    hits += u64::from(spec.holds(&sampler.sample(n))?);
                }
                Some(MonteCarlo {
                    n,
                    samples,
                    empirical: hits as f64 / samples as f64,
                    stderr: {
                        let p = hits as f64 / samples as f64;
                        libm::sqrt(p * (1.0 - p) / samples as f64)
                    },
                })
            } else {
                None
            };
            Ok(DensityPoint {
                target: target.clone(),
                within: defect <= *epsilon,
                defect,
                spec,
                monte_carlo,
            })
        })
        .collect()
}

/// Parses `a/b`, a decimal such as `0.25`, or scientific notation such as
/// `1e-6`, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::TargetOutOfRange(text.into());
    let s = text.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if (int.is_empty() && frac.is_empty()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{frac}", if int.is_empty() { "0" } else { int });
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i64;
    let ten = |e: u64| num_traits::pow(BigInt::from(10), e as usize);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * ten(shift as u64))
    } else {
        BigRational::new(num, ten(shift.unsigned_abs()))
    })
}
