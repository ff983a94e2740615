//! Permutations in one-line notation, pattern containment, the sum and
//! skew-sum operations, and the canonical decomposition of 231-avoiders.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Default size cap for exhaustive enumeration of `Av_n(231)`.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// Entry `i` is the value at position `i`. The empty permutation (`n = 0`)
/// is a regular value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a permutation of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(values));
            }
            seen[v - 1] = true;
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `12...n`.
    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    /// `n...21`.
    pub fn decreasing(n: usize) -> Self {
        Self {
            values: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Order-isomorphic standardization of an arbitrary sequence of distinct
    /// integers.
    pub fn standardize(seq: &[u32]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_unstable_by_key(|&i| seq[i]);
        let mut values = vec![0u32; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Self { values }
    }

    /// `self ⊕ other`: juxtapose, shifting `other` up by `|self|`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.len() as u32;
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend(other.values.iter().map(|v| v + shift));
        Self { values }
    }

    /// `self ⊖ other`: juxtapose, shifting `self` up by `|other|`.
    pub fn skew_sum(&self, other: &Self) -> Self {
        let shift = other.len() as u32;
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend(self.values.iter().map(|v| v + shift));
        values.extend_from_slice(&other.values);
        Self { values }
    }

    /// `tau ⊕ (1 ⊖ pi)`, the inverse of [`Permutation::decompose`].
    pub fn compose_231(tau: &Self, pi: &Self) -> Self {
        let a = tau.len() as u32;
        let n = a + pi.len() as u32 + 1;
        let mut values = Vec::with_capacity(n as usize);
        values.extend_from_slice(&tau.values);
        values.push(n);
        values.extend(pi.values.iter().map(|v| v + a));
        Self { values }
    }

    /// Brute-force pattern containment over subsequences, pruning on the
    /// relative order of the chosen prefix.
    pub fn contains_pattern(&self, pattern: &Self) -> bool {
        let k = pattern.len();
        if k == 0 {
            return true;
        }
        if k > self.len() {
            return false;
        }
        let mut chosen: Vec<u32> = Vec::with_capacity(k);
        self.embed_from(0, pattern, &mut chosen)
    }

    fn embed_from(&self, start: usize, pattern: &Self, chosen: &mut Vec<u32>) -> bool {
        let j = chosen.len();
        if j == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - j;
        let pj = pattern.values[j];
        for i in start..=self.len() - remaining {
            let v = self.values[i];
            let consistent = chosen
                .iter()
                .zip(&pattern.values)
                .all(|(&c, &p)| (c < v) == (p < pj));
            if consistent {
                chosen.push(v);
                if self.embed_from(i + 1, pattern, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Linear-time 231 test: a permutation avoids 231 iff a single stack
    /// sorts it.
    pub fn avoids_231(&self) -> bool {
        let mut stack: Vec<u32> = Vec::new();
        let mut last_out = 0u32;
        for &x in &self.values {
            while let Some(&top) = stack.last() {
                if top >= x {
                    break;
                }
                if top < last_out {
                    return false;
                }
                last_out = top;
                stack.pop();
            }
            stack.push(x);
        }
        while let Some(top) = stack.pop() {
            if top < last_out {
                return false;
            }
            last_out = top;
        }
        true
    }

    /// Writes a nonempty 231-avoider as `tau ⊕ (1 ⊖ pi)`: `tau` is the
    /// prefix before the maximum and `pi` the standardized suffix after it.
    pub fn decompose(&self) -> Result<(Self, Self)> {
        if self.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        if !self.avoids_231() {
            return Err(Error::Contains231(self.clone()));
        }
        let n = self.len() as u32;
        let p = self.values.iter().position(|&v| v == n).unwrap_or(0);
        let tau = Self {
            values: self.values[..p].to_vec(),
        };
        let shift = p as u32;
        let pi = Self {
            values: self.values[p + 1..].iter().map(|v| v - shift).collect(),
        };
        Ok((tau, pi))
    }

    /// Max-rooted Cartesian tree of the permutation as parallel arrays
    /// `(left, right, root)` indexed by position. For a 231-avoider the
    /// left subtree of a node is exactly `tau` and the right subtree `pi` in
    /// its decomposition.
    pub fn max_cartesian_tree(&self) -> (Vec<Option<u32>>, Vec<Option<u32>>, Option<u32>) {
        let n = self.len();
        let mut left = vec![None; n];
        let mut right = vec![None; n];
        let mut stack: Vec<u32> = Vec::new();
        for i in 0..n {
            let mut last: Option<u32> = None;
            while let Some(&top) = stack.last() {
                if self.values[top as usize] < self.values[i] {
                    last = stack.pop();
                } else {
                    break;
                }
            }
            left[i] = last;
            if let Some(&top) = stack.last() {
                right[top as usize] = Some(i as u32);
            }
            stack.push(i as u32);
        }
        (left, right, stack.first().copied())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the comma-separated form; the empty string is the empty
    /// permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let values = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::PermutationSyntax(String::from(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

/// All 231-avoiders of size `n` in lexicographic order.
pub fn enumerate_av231(n: usize) -> Result<Vec<Permutation>> {
    enumerate_av231_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_av231_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            value: n,
            cap,
        });
    }
    // Build by size through the decomposition, then sort.
    let mut by_size: Vec<Vec<Permutation>> = vec![vec![Permutation::empty()]];
    for m in 1..=n {
        let mut level = Vec::new();
        for a in 0..m {
            for tau in &by_size[a] {
                for pi in &by_size[m - 1 - a] {
                    level.push(Permutation::compose_231(tau, pi));
                }
            }
        }
        level.sort_unstable();
        by_size.push(level);
    }
    Ok(by_size.swap_remove(n))
}

/// All 231-avoiders of every size `0..=max_n`, grouped by size.
pub fn enumerate_av231_upto(max_n: usize, cap: usize) -> Result<Vec<Vec<Permutation>>> {
    (0..=max_n).map(|n| enumerate_av231_capped(n, cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation::new(cur.clone()).unwrap());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v as u32 + 1);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("4,5,2,3,1").to_string(), "4,5,2,3,1");
        assert_eq!(p("").to_string(), "");
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn sums_match_worked_examples() {
        assert_eq!(p("1,2").direct_sum(&p("2,3,1")), p("1,2,4,5,3"));
        assert_eq!(p("1,2").skew_sum(&p("2,3,1")), p("4,5,2,3,1"));
        assert_eq!(Permutation::empty().direct_sum(&p("2,3,1")), p("2,3,1"));
        assert_eq!(p("2,3,1").skew_sum(&Permutation::empty()), p("2,3,1"));
    }

    #[test]
    fn pattern_containment() {
        assert!(p("2,4,1,3").contains_pattern(&p("2,3,1")));
        assert!(p("3,1,2").contains_pattern(&Permutation::empty()));
        assert!(Permutation::empty().contains_pattern(&Permutation::empty()));
        assert!(!p("1,2,3").contains_pattern(&p("2,1")));
        assert!(!p("1,2").contains_pattern(&p("1,2,3")));
    }

    #[test]
    fn stack_test_agrees_with_brute_force() {
        let pat = p("2,3,1");
        for n in 0..=7 {
            for s in all_perms(n) {
                assert_eq!(s.avoids_231(), !s.contains_pattern(&pat), "{s}");
            }
        }
    }

    #[test]
    fn enumeration_matches_filtered_symmetric_group() {
        let pat = p("2,3,1");
        for n in 0..=7 {
            let filtered: Vec<_> = all_perms(n)
                .into_iter()
                .filter(|s| !s.contains_pattern(&pat))
                .collect();
            assert_eq!(enumerate_av231(n).unwrap(), filtered);
        }
        assert_eq!(enumerate_av231(0).unwrap(), vec![Permutation::empty()]);
        assert_eq!(enumerate_av231(3).unwrap().len(), 5);
        assert_eq!(enumerate_av231(10).unwrap().len(), 16796);
        assert!(enumerate_av231(13).is_err());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            p("1").decompose().unwrap(),
            (Permutation::empty(), Permutation::empty())
        );
        assert_eq!(
            p("3,1,2").decompose().unwrap(),
            (Permutation::empty(), p("1,2"))
        );
        assert_eq!(
            p("1,2,5,3,4").decompose().unwrap(),
            (p("1,2"), p("1,2"))
        );
        assert!(Permutation::empty().decompose().is_err());
        assert!(p("2,3,1").decompose().is_err());
    }

    #[test]
    fn decompose_round_trip() {
        for n in 1..=8 {
            for s in enumerate_av231(n).unwrap() {
                let (tau, pi) = s.decompose().unwrap();
                assert!(tau.avoids_231() && pi.avoids_231());
                let one = Permutation::identity(1);
                assert_eq!(tau.direct_sum(&one.skew_sum(&pi)), s);
                assert_eq!(Permutation::compose_231(&tau, &pi), s);
            }
        }
    }

    #[test]
    fn cartesian_tree_matches_decomposition() {
        for n in 1..=7 {
            for s in enumerate_av231(n).unwrap() {
                let (left, right, root) = s.max_cartesian_tree();
                let root = root.unwrap() as usize;
                assert_eq!(s.values()[root] as usize, n);
                let (tau, pi) = s.decompose().unwrap();
                assert_eq!(left[root].is_some(), !tau.is_empty());
                assert_eq!(right[root].is_some(), !pi.is_empty());
            }
        }
    }
}
