//! Rank-k logical types of permutations with marked tuples.
//!
//! The rank-0 type of `(sigma, a_1..a_m)` is the atomic diagram of the
//! tuple: the dense ranks of its positions and of its values (equal entries
//! share a rank). The rank-r type is the pair (rank-0 type, set of rank-(r-1)
//! types of every one-element extension). Two permutations have equal rank-k
//! types iff Duplicator wins the k-round EF game on them.
//!
//! Types are hash-consed in a [`TypeInterner`]; within one interner, equal
//! ids mean equal types. [`TypeFingerprint`] is the run-independent byte
//! encoding.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Interned rank-r type; meaningful only relative to its interner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeKey(pub u32);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TypeNode {
    rank: u8,
    diagram: Vec<u8>,
    children: Vec<TypeKey>,
}

/// Canonical byte encoding of a rank-k type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeFingerprint(pub Vec<u8>);

impl TypeFingerprint {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for TypeFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeFingerprint({} bytes: ", self.0.len())?;
        for b in self.0.iter().take(16) {
            write!(f, "{b:02x}")?;
        }
        if self.0.len() > 16 {
            f.write_str("..")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FingerprintCaps {
    pub max_order: usize,
    pub max_size: usize,
}

impl Default for FingerprintCaps {
    fn default() -> Self {
        Self {
            max_order: 3,
            max_size: 40,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TypeInterner {
    nodes: Vec<TypeNode>,
    index: BTreeMap<TypeNode, TypeKey>,
    encoded: Vec<Option<Vec<u8>>>,
    caps: FingerprintCaps,
}

impl TypeInterner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_caps(caps: FingerprintCaps) -> Self {
        Self {
            caps,
            ..Self::default()
        }
    }

    pub fn caps(&self) -> FingerprintCaps {
        self.caps
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn intern(&mut self, node: TypeNode) -> TypeKey {
        if let Some(&k) = self.index.get(&node) {
            return k;
        }
        let k = TypeKey(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.encoded.push(None);
        self.index.insert(node, k);
        k
    }

    /// Rank-`k` type of `sigma` with nothing marked.
    pub fn type_of(&mut self, sigma: &Permutation, k: usize) -> Result<TypeKey> {
        self.type_of_marked(sigma, &[], k)
    }

    /// Rank-`k` type of `sigma` with the 0-based positions in `marked`.
    pub fn type_of_marked(&mut self, sigma: &Permutation, marked: &[u32], k: usize) -> Result<TypeKey> {
        if k > self.caps.max_order {
            return Err(Error::CapExceeded {
                what: "fingerprint order",
                value: k,
                cap: self.caps.max_order,
            });
        }
        if sigma.len() > self.caps.max_size {
            return Err(Error::CapExceeded {
                what: "fingerprint permutation size",
                value: sigma.len(),
                cap: self.caps.max_size,
            });
        }
        let mut tuple = marked.to_vec();
        let mut scratch = Vec::new();
        Ok(self.rec(sigma.values(), &mut tuple, k, &mut scratch))
    }

    fn rec(&mut self, values: &[u32], tuple: &mut Vec<u32>, rank: usize, scratch: &mut Vec<u8>) -> TypeKey {
        diagram(values, tuple, scratch);
        let diag = scratch.clone();
        let children = if rank == 0 {
            Vec::new()
        } else {
            let mut kids = Vec::with_capacity(values.len());
            for e in 0..values.len() as u32 {
                tuple.push(e);
                kids.push(self.rec(values, tuple, rank - 1, scratch));
                tuple.pop();
            }
            kids.sort_unstable();
            kids.dedup();
            kids
        };
        self.intern(TypeNode {
            rank: rank as u8,
            diagram: diag,
            children,
        })
    }

    /// Canonical bytes of an interned type: children are ordered by their
    /// own encodings, so the result does not depend on interning order.
    pub fn fingerprint(&mut self, key: TypeKey) -> TypeFingerprint {
        TypeFingerprint(self.encode(key).to_vec())
    }

    fn encode(&mut self, key: TypeKey) -> &[u8] {
        let i = key.0 as usize;
        if self.encoded[i].is_none() {
            let node = self.nodes[i].clone();
            let mut kids: Vec<Vec<u8>> = node.children.iter().map(|&c| self.encode(c).to_vec()).collect();
            kids.sort_unstable();
            let mut out = Vec::new();
            out.push(node.rank);
            out.push(node.diagram.len() as u8);
            out.extend_from_slice(&node.diagram);
            out.extend_from_slice(&(kids.len() as u32).to_le_bytes());
            for kid in kids {
                out.extend_from_slice(&(kid.len() as u32).to_le_bytes());
                out.extend_from_slice(&kid);
            }
            self.encoded[i] = Some(out);
        }
        self.encoded[i].as_deref().unwrap_or(&[])
    }

    pub fn rank(&self, key: TypeKey) -> usize {
        self.nodes[key.0 as usize].rank as usize
    }
}

/// Position ranks then value ranks of the marked tuple.
fn diagram(values: &[u32], tuple: &[u32], out: &mut Vec<u8>) {
    out.clear();
    for &e in tuple {
        let r = tuple.iter().filter(|&&o| o < e).collect::<DistinctCount>().0;
        out.push(r as u8);
    }
    for &e in tuple {
        let v = values[e as usize];
        let r = tuple
            .iter()
            .map(|&o| values[o as usize])
            .filter(|&w| w < v)
            .collect::<DistinctCount>()
            .0;
        out.push(r as u8);
    }
}

/// Counts distinct items of a short iterator.
struct DistinctCount(usize);

impl<T: PartialEq> FromIterator<T> for DistinctCount {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut seen: Vec<T> = Vec::new();
        for x in iter {
            if !seen.contains(&x) {
                seen.push(x);
            }
        }
        DistinctCount(seen.len())
    }
}

/// Rank-`k` fingerprint of `sigma` (fresh interner, default caps).
pub fn fingerprint(sigma: &Permutation, k: usize) -> Result<TypeFingerprint> {
    let mut interner = TypeInterner::new();
    let key = interner.type_of(sigma, k)?;
    Ok(interner.fingerprint(key))
}

/// `alpha ≡_k beta`, decided by comparing rank-k types.
pub fn k_equivalent(alpha: &Permutation, beta: &Permutation, k: usize) -> Result<bool> {
    let mut interner = TypeInterner::new();
    let a = interner.type_of(alpha, k)?;
    let b = interner.type_of(beta, k)?;
    Ok(a == b)
}

/// Fingerprint of the empty permutation at order `k`.
pub fn empty_fingerprint(k: usize) -> TypeFingerprint {
    let mut interner = TypeInterner::with_caps(FingerprintCaps {
        max_order: k,
        max_size: 0,
    });
    let key = interner
        .type_of(&Permutation::empty(), k)
        .unwrap_or(TypeKey(0));
    interner.fingerprint(key)
}
