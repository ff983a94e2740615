//! Invariants of permutations that are compatible with the composition
//! `(tau, pi) -> tau ⊕ (1 ⊖ pi)`: the class of a composite depends only on
//! the classes of its two parts.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::logic::fingerprint::{FingerprintCaps, TypeFingerprint, TypeInterner, TypeKey};
use crate::perm::Permutation;

pub trait Invariant {
    type Key: Ord + Clone;

    fn key(&mut self, sigma: &Permutation) -> Result<Self::Key>;

    /// Run-independent encoding of a class.
    fn fingerprint(&mut self, key: &Self::Key) -> TypeFingerprint;
}

/// Rank-k logical types in the language of two orders.
#[derive(Clone, Debug)]
pub struct FoTypes {
    k: usize,
    interner: TypeInterner,
}

impl FoTypes {
    pub fn new(k: usize, caps: FingerprintCaps) -> Self {
        Self {
            k,
            interner: TypeInterner::with_caps(caps),
        }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn interner_mut(&mut self) -> &mut TypeInterner {
        &mut self.interner
    }
}

impl Invariant for FoTypes {
    type Key = TypeKey;

    fn key(&mut self, sigma: &Permutation) -> Result<TypeKey> {
        self.interner.type_of(sigma, self.k)
    }

    fn fingerprint(&mut self, key: &TypeKey) -> TypeFingerprint {
        self.interner.fingerprint(*key)
    }
}

/// The max-rooted decomposition tree cut off below a fixed depth.
///
/// Encoding: `0` for the empty permutation, `2` for a nonempty subtree
/// below the cut, and `1` followed by the encodings of `tau` and `pi`.
/// Depth `d + 1` decides every event `tau = rho` or `pi = rho` with
/// `|rho| <= d`, which lies beyond small logical orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionShape {
    depth: usize,
}

impl DecompositionShape {
    pub const MAX_DEPTH: usize = 4;

    pub fn new(depth: usize) -> Result<Self> {
        if depth == 0 || depth > Self::MAX_DEPTH {
            return Err(Error::CapExceeded {
                what: "shape depth",
                value: depth,
                cap: Self::MAX_DEPTH,
            });
        }
        Ok(Self { depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Encoding of the truncated tree of `sigma`, which must avoid 231.
    pub fn encode(&self, sigma: &Permutation) -> Result<Vec<u8>> {
        if !sigma.avoids_231() {
            return Err(Error::Contains231(sigma.clone()));
        }
        let (left, right, root) = sigma.max_cartesian_tree();
        let mut out = Vec::new();
        // (node, remaining depth)
        let mut stack: Vec<(Option<u32>, usize)> = alloc::vec![(root, self.depth)];
        while let Some((node, d)) = stack.pop() {
            match node {
                None => out.push(0),
                Some(_) if d == 0 => out.push(2),
                Some(v) => {
                    out.push(1);
                    stack.push((right[v as usize], d - 1));
                    stack.push((left[v as usize], d - 1));
                }
            }
        }
        Ok(out)
    }
}

impl Invariant for DecompositionShape {
    type Key = Vec<u8>;

    fn key(&mut self, sigma: &Permutation) -> Result<Vec<u8>> {
        self.encode(sigma)
    }

    fn fingerprint(&mut self, key: &Vec<u8>) -> TypeFingerprint {
        TypeFingerprint(key.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn shape_encoding() {
        let d2 = DecompositionShape::new(2).unwrap();
        assert_eq!(d2.encode(&p("")).unwrap(), [0]);
        assert_eq!(d2.encode(&p("1")).unwrap(), [1, 0, 0]);
        // 1,3,2: tau = 1, pi = 1
        assert_eq!(d2.encode(&p("1,3,2")).unwrap(), [1, 1, 0, 0, 1, 0, 0]);
        // 1,2,4,3: tau = 12 is cut at depth 1 below the root
        assert_eq!(d2.encode(&p("1,2,4,3")).unwrap(), [1, 1, 2, 0, 1, 0, 0]);
        assert!(d2.encode(&p("2,3,1")).is_err());
        assert!(DecompositionShape::new(0).is_err());
    }

    #[test]
    fn shape_is_compositional() {
        let mut d = DecompositionShape::new(2).unwrap();
        let all: Vec<Permutation> = (0..=5).flat_map(|n| crate::perm::enumerate_av231(n).unwrap()).collect();
        let mut table = alloc::collections::BTreeMap::new();
        for a in &all {
            for b in &all {
                let ka = d.key(a).unwrap();
                let kb = d.key(b).unwrap();
                let kc = d.key(&Permutation::compose_231(a, b)).unwrap();
                let prev = table.insert((ka, kb), kc.clone());
                assert!(prev.is_none_or(|x| x == kc));
            }
        }
    }
}
