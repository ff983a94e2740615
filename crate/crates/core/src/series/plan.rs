use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::types::{Invariant, TypeSystem};

/// One bilinear block of the refined system: `fixed * (Σ summed)`
/// contributes to `target`. Convolution is symmetric, so a block may come
/// from a row or a column of the composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Group {
    pub target: usize,
    pub fixed: usize,
    pub summed: Vec<usize>,
    /// `fixed` is the left argument of the composition.
    pub row: bool,
}

/// Cover of every preimage set `{(t1, t2) : H(t1, t2) = t}` by rows and
/// columns, chosen greedily by size.
#[derive(Clone, Debug)]
pub(crate) struct ConvPlan {
    pub types: usize,
    pub groups: Vec<Group>,
    pub by_target: Vec<Vec<usize>>,
}

impl ConvPlan {
    pub fn new<I: Invariant>(ts: &TypeSystem<I>) -> Self {
        let types = ts.len();
        let mut groups: Vec<Group> = Vec::new();
        for (t, pairs) in ts.preimages().into_iter().enumerate() {
            let mut left: BTreeSet<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.index(), b.index())).collect();
            while !left.is_empty() {
                let mut rows = vec![0usize; types];
                let mut cols = vec![0usize; types];
                for &(a, b) in &left {
                    rows[a] += 1;
                    cols[b] += 1;
                }
                let (ra, rn) = best(&rows);
                let (ca, cn) = best(&cols);
                let row = rn >= cn;
                let (fixed, summed): (usize, Vec<usize>) = if row {
                    (ra, left.iter().filter(|p| p.0 == ra).map(|p| p.1).collect())
                } else {
                    (ca, left.iter().filter(|p| p.1 == ca).map(|p| p.0).collect())
                };
                for &s in &summed {
                    let pair = if row { (fixed, s) } else { (s, fixed) };
                    left.remove(&pair);
                }
                groups.push(Group {
                    target: t,
                    fixed,
                    summed,
                    row,
                });
            }
        }
        let mut by_target = vec![Vec::new(); types];
        for (i, g) in groups.iter().enumerate() {
            by_target[g.target].push(i);
        }
        Self {
            types,
            groups,
            by_target,
        }
    }
}

/// First index of the maximum.
fn best(counts: &[usize]) -> (usize, usize) {
    counts
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0), |acc, (i, c)| if c > acc.1 { (i, c) } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{build_type_system, TypeId};

    #[test]
    fn plan_covers_each_pair_once() {
        let ts = build_type_system(2, 6).unwrap();
        let plan = ConvPlan::new(&ts);
        let mut seen = BTreeSet::new();
        for g in &plan.groups {
            for &s in &g.summed {
                let (a, b) = if g.row { (g.fixed, s) } else { (s, g.fixed) };
                assert_eq!(ts.compose(TypeId(a as u32), TypeId(b as u32)).index(), g.target);
                assert!(seen.insert((a, b)));
            }
        }
        assert_eq!(seen.len(), ts.len() * ts.len());
        assert!(plan.groups.len() < ts.len() * ts.len() / 10);
    }
}
