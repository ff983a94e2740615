//! Uniform sampling of 231-avoiding permutations through binary trees.
//!
//! A binary tree with `n` nodes maps to a 231-avoider of size `n` by
//! `(left, root, right) -> image(left) ⊕ (1 ⊖ image(right))`; this is a
//! bijection (it inverts [`Permutation::decompose`]), so uniform trees give
//! uniform permutations.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalan::CatalanCache;
use crate::perm::Permutation;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unbiased integer in `0..bound` (`bound > 0`) by rejection.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

/// Unbiased big integer in `0..bound` (`bound > 0`) by rejection on the bit
/// length of `bound`.
pub fn uniform_big_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        if let Some(last) = digits.last_mut() {
            *last &= top_mask;
        }
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Binary tree stored as child arrays over node indices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTree {
    pub left: Vec<Option<u32>>,
    pub right: Vec<Option<u32>>,
    pub root: Option<u32>,
}

impl BinaryTree {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// Nodes in post-order (children before parents).
    pub fn post_order(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<(u32, bool)> = Vec::new();
        if let Some(r) = self.root {
            stack.push((r, false));
        }
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
                continue;
            }
            stack.push((v, true));
            if let Some(r) = self.right[v as usize] {
                stack.push((r, false));
            }
            if let Some(l) = self.left[v as usize] {
                stack.push((l, false));
            }
        }
        out
    }

    /// `image(left) ⊕ (1 ⊖ image(right))`, applied recursively.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.len();
        let mut size = vec![0u32; n];
        for v in self.post_order() {
            let v = v as usize;
            let l = self.left[v].map_or(0, |c| size[c as usize]);
            let r = self.right[v].map_or(0, |c| size[c as usize]);
            size[v] = l + r + 1;
        }
        let mut values = vec![0u32; n];
        // (node, first position, smallest value - 1)
        let mut stack: Vec<(u32, u32, u32)> = Vec::new();
        if let Some(r) = self.root {
            stack.push((r, 0, 0));
        }
        while let Some((v, pos, base)) = stack.pop() {
            let vi = v as usize;
            let l = self.left[vi].map_or(0, |c| size[c as usize]);
            values[(pos + l) as usize] = base + size[vi];
            if let Some(c) = self.left[vi] {
                stack.push((c, pos, base));
            }
            if let Some(c) = self.right[vi] {
                stack.push((c, pos + l + 1, base + l));
            }
        }
        Permutation::from_vec_unchecked(values)
    }
}

/// Rémy's growth procedure: a uniform binary tree with `n` nodes in linear
/// time.
pub fn remy_tree<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> BinaryTree {
    // Extended tree: internal nodes are odd slots 2i+1, leaves even slots.
    let total = 2 * n + 1;
    let mut left = vec![u32::MAX; total];
    let mut right = vec![u32::MAX; total];
    let mut parent = vec![u32::MAX; total];
    let mut root = 0u32;
    for i in 0..n as u32 {
        let x = uniform_below(rng, 2 * i as u64 + 1) as u32;
        let a = 2 * i + 1;
        let b = 2 * i + 2;
        let px = parent[x as usize];
        if px == u32::MAX {
            root = a;
        } else if left[px as usize] == x {
            left[px as usize] = a;
        } else {
            right[px as usize] = a;
        }
        parent[a as usize] = px;
        if rng.next_u32() & 1 == 0 {
            left[a as usize] = x;
            right[a as usize] = b;
        } else {
            left[a as usize] = b;
            right[a as usize] = x;
        }
        parent[x as usize] = a;
        parent[b as usize] = a;
    }
    // Keep internal nodes only, renumbered 0..n.
    let internal = |s: u32| -> Option<u32> {
        if s != u32::MAX && s % 2 == 1 {
            Some((s - 1) / 2)
        } else {
            None
        }
    };
    let mut tl = vec![None; n];
    let mut tr = vec![None; n];
    for i in 0..n {
        let s = 2 * i + 1;
        tl[i] = internal(left[s]);
        tr[i] = internal(right[s]);
    }
    BinaryTree {
        left: tl,
        right: tr,
        root: internal(root),
    }
}

/// Exact Catalan-weighted splitting: the left subtree of a node of size `s`
/// gets size `m` with probability `Cat_m Cat_{s-1-m} / Cat_s`.
pub fn catalan_split_tree<R: RngCore + ?Sized>(
    n: usize,
    catalan: &mut CatalanCache,
    rng: &mut R,
) -> BinaryTree {
    catalan.extend_to(n);
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    let mut next = 0u32;
    let mut alloc_node = || {
        let v = next;
        next += 1;
        v
    };
    let root = if n == 0 { None } else { Some(alloc_node()) };
    let mut stack: Vec<(u32, usize)> = root.into_iter().map(|r| (r, n)).collect();
    while let Some((v, s)) = stack.pop() {
        let mut r = uniform_big_below(rng, catalan.at(s));
        let mut m = 0usize;
        loop {
            let w = catalan.at(m) * catalan.at(s - 1 - m);
            if r < w {
                break;
            }
            r -= w;
            m += 1;
        }
        if m > 0 {
            let c = alloc_node();
            left[v as usize] = Some(c);
            stack.push((c, m));
        }
        if s - 1 - m > 0 {
            let c = alloc_node();
            right[v as usize] = Some(c);
            stack.push((c, s - 1 - m));
        }
    }
    BinaryTree { left, right, root }
}

/// Which tree sampler backs [`sample_uniform_av231`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TreeSampler {
    /// Linear time; used for Monte-Carlo at large sizes.
    #[default]
    Remy,
    /// Quadratic in big-integer operations; exact by construction.
    CatalanSplit,
}

/// A uniform random element of `Av_n(231)`, reproducible from `seed`.
pub fn sample_uniform_av231(n: usize, seed: u64) -> Permutation {
    let mut rng = rng_from_seed(seed);
    remy_tree(n, &mut rng).to_permutation()
}

/// Reusable sampler for drawing many permutations from one stream.
pub struct Av231Sampler {
    rng: SeededRng,
    method: TreeSampler,
    catalan: CatalanCache,
}

impl Av231Sampler {
    pub fn new(seed: u64, method: TreeSampler) -> Self {
        Self {
            rng: rng_from_seed(seed),
            method,
            catalan: CatalanCache::new(),
        }
    }

    pub fn tree(&mut self, n: usize) -> BinaryTree {
        match self.method {
            TreeSampler::Remy => remy_tree(n, &mut self.rng),
            TreeSampler::CatalanSplit => catalan_split_tree(n, &mut self.catalan, &mut self.rng),
        }
    }

    pub fn sample(&mut self, n: usize) -> Permutation {
        self.tree(n).to_permutation()
    }
}
