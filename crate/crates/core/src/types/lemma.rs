//! Checks that the class of `tau ⊕ (1 ⊖ pi)` depends only on the classes of
//! `tau` and `pi`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::invariant::Invariant;
use super::system::TypeSystem;
use crate::error::Result;
use crate::perm::{enumerate_av231, Permutation};
use crate::sample::{rng_from_seed, uniform_below};

/// Two compositions with class-equal components but different classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub tau: (Permutation, Permutation),
    pub pi: (Permutation, Permutation),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Avoiders of size at most `max_size`, grouped by class.
fn classes<I: Invariant>(ts: &mut TypeSystem<I>, max_size: usize) -> Result<Vec<Vec<Permutation>>> {
    let mut by: BTreeMap<I::Key, Vec<Permutation>> = BTreeMap::new();
    for n in 0..=max_size {
        for s in enumerate_av231(n)? {
            by.entry(ts.invariant_mut().key(&s)?).or_default().push(s);
        }
    }
    Ok(by.into_values().collect())
}

/// Every pair of class-equal pairs `(tau1, tau2)`, `(pi1, pi2)` with all
/// components of size at most `max_size`; compares each composite against
/// the composite of the first members of the classes.
pub fn verify_composition_exhaustive<I: Invariant>(ts: &mut TypeSystem<I>, max_size: usize) -> Result<LemmaReport> {
    let groups = classes(ts, max_size)?;
    let mut report = LemmaReport::default();
    for ga in &groups {
        for gb in &groups {
            let (a0, b0) = (&ga[0], &gb[0]);
            let base = ts.invariant_mut().key(&Permutation::compose_231(a0, b0))?;
            for a in ga {
                for b in gb {
                    report.checked += 1;
                    let k = ts.invariant_mut().key(&Permutation::compose_231(a, b))?;
                    if k != base {
                        report.violations.push(Violation {
                            tau: (a0.clone(), a.clone()),
                            pi: (b0.clone(), b.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Random variant: `trials` draws of two classes and two members of each,
/// among avoiders of size at most `max_size`.
pub fn verify_composition_lemma<I: Invariant>(
    ts: &mut TypeSystem<I>,
    trials: usize,
    seed: u64,
    max_size: usize,
) -> Result<LemmaReport> {
    let groups = classes(ts, max_size)?;
    let mut rng = rng_from_seed(seed);
    let mut pick = |len: usize| uniform_below(&mut rng, len as u64) as usize;
    let mut report = LemmaReport::default();
    for _ in 0..trials {
        let ga = &groups[pick(groups.len())];
        let gb = &groups[pick(groups.len())];
        let (t1, t2) = (&ga[pick(ga.len())], &ga[pick(ga.len())]);
        let (p1, p2) = (&gb[pick(gb.len())], &gb[pick(gb.len())]);
        report.checked += 1;
        let k1 = ts.invariant_mut().key(&Permutation::compose_231(t1, p1))?;
        let k2 = ts.invariant_mut().key(&Permutation::compose_231(t2, p2))?;
        if k1 != k2 {
            report.violations.push(Violation {
                tau: (t1.clone(), t2.clone()),
                pi: (p1.clone(), p2.clone()),
            });
        }
    }
    Ok(report)
}
