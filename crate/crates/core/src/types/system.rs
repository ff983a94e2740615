use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::graph::Condensation;
use crate::error::{Error, Result};
use super::invariant::{FoTypes, Invariant};
use crate::logic::fingerprint::{FingerprintCaps, TypeFingerprint};
use crate::perm::{enumerate_av231_capped, Permutation};
use crate::sample::BinaryTree;

/// Dense index of a type in a [`TypeSystem`]; the empty type is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(pub u32);

impl TypeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct TypeInfo {
    pub fingerprint: TypeFingerprint,
    /// Smallest realizer, lexicographically first among those.
    pub rep: Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub seed_size: usize,
    pub caps: FingerprintCaps,
    /// Guard on saturation rounds.
    pub max_rounds: usize,
    /// Guard on the number of classes.
    pub max_types: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            seed_size: 8,
            caps: FingerprintCaps::default(),
            max_rounds: 10_000,
            max_types: 2_000,
        }
    }
}

/// The classes of an invariant realized by `Av(231)` together with the
/// composition table `H(t1, t2) = class(rep(t1) ⊕ (1 ⊖ rep(t2)))`, the
/// dependency graph and its terminal strongly connected component.
///
/// With the default invariant the classes are the rank-k logical types.
#[derive(Clone, Debug)]
pub struct TypeSystem<I: Invariant = FoTypes> {
    types: Vec<TypeInfo>,
    composition: Vec<Vec<TypeId>>,
    adjacency: Vec<Vec<usize>>,
    condensation: Condensation,
    star: Vec<bool>,
    invariant: I,
    by_key: BTreeMap<I::Key, TypeId>,
    seed_size: usize,
}

pub fn build_type_system(k: usize, seed_size: usize) -> Result<TypeSystem> {
    TypeSystem::build(
        k,
        BuildOptions {
            seed_size,
            ..BuildOptions::default()
        },
    )
}

impl TypeSystem<FoTypes> {
    pub fn build(k: usize, opts: BuildOptions) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidOrder { k, min: 1 });
        }
        Self::build_with(FoTypes::new(k, opts.caps), opts)
    }

    /// Order `k` of the logical types.
    pub fn order(&self) -> usize {
        self.invariant.order()
    }
}

impl<I: Invariant> TypeSystem<I> {
    /// Saturates the classes of `invariant` under composition.
    pub fn build_with(mut invariant: I, opts: BuildOptions) -> Result<Self> {
        // key -> representative, in discovery order
        let mut reps: Vec<(I::Key, Permutation)> = Vec::new();
        let mut known: BTreeMap<I::Key, usize> = BTreeMap::new();

        // Seed: every avoider up to seed_size, smallest sizes first and
        // lexicographic within a size, so first sightings are minimal.
        let seed_cap = opts.seed_size.max(crate::perm::DEFAULT_ENUMERATION_CAP);
        for n in 0..=opts.seed_size {
            for sigma in enumerate_av231_capped(n, seed_cap)? {
                let key = invariant.key(&sigma)?;
                if let alloc::collections::btree_map::Entry::Vacant(e) = known.entry(key.clone()) {
                    e.insert(reps.len());
                    reps.push((key, sigma));
                }
            }
        }

        let check_count = |n: usize| {
            if n > opts.max_types {
                return Err(Error::CapExceeded {
                    what: "number of types",
                    value: n,
                    cap: opts.max_types,
                });
            }
            Ok(())
        };
        check_count(reps.len())?;

        // Size-ordered closure under composition. A type whose smallest
        // realizer has size s decomposes into types of smallest sizes summing
        // to s - 1, so finalizing the globally smallest candidates first
        // yields exact minimal, lexicographically first representatives.
        let mut table: BTreeMap<(usize, usize), I::Key> = BTreeMap::new();
        let mut done = 0usize;
        let mut rounds = 0usize;
        loop {
            let total = reps.len();
            for i in 0..total {
                let jstart = if i < done { done } else { 0 };
                for j in jstart..total {
                    if table.contains_key(&(i, j)) {
                        continue;
                    }
                    let composed = Permutation::compose_231(&reps[i].1, &reps[j].1);
                    let key = invariant.key(&composed)?;
                    table.insert((i, j), key);
                }
            }
            done = total;
            // Candidate realizers of undiscovered types.
            let mut candidates: BTreeMap<I::Key, Permutation> = BTreeMap::new();
            for (&(i, j), key) in &table {
                if known.contains_key(key) {
                    continue;
                }
                let composed = Permutation::compose_231(&reps[i].1, &reps[j].1);
                let better = match candidates.get(key) {
                    None => true,
                    Some(cur) => (composed.len(), &composed) < (cur.len(), cur),
                };
                if better {
                    candidates.insert(key.clone(), composed);
                }
            }
            let Some(min_size) = candidates.values().map(Permutation::len).min() else {
                break;
            };
            rounds += 1;
            if rounds > opts.max_rounds {
                return Err(Error::SaturationDiverged(opts.max_rounds));
            }
            for (key, rep) in candidates {
                if rep.len() == min_size {
                    known.insert(key.clone(), reps.len());
                    reps.push((key, rep));
                }
            }
            check_count(reps.len())?;
        }

        // Canonical numbering: by representative size, then lexicographic.
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| {
            let (ra, rb) = (&reps[a].1, &reps[b].1);
            (ra.len(), ra).cmp(&(rb.len(), rb))
        });
        let mut new_id = vec![0u32; reps.len()];
        for (id, &old) in order.iter().enumerate() {
            new_id[old] = id as u32;
        }
        let n = reps.len();
        let mut composition = vec![vec![TypeId(0); n]; n];
        for (&(i, j), key) in &table {
            composition[new_id[i] as usize][new_id[j] as usize] = TypeId(new_id[known[key]]);
        }
        let mut types = Vec::with_capacity(n);
        let mut by_key = BTreeMap::new();
        for (id, &old) in order.iter().enumerate() {
            let (key, rep) = &reps[old];
            types.push(TypeInfo {
                fingerprint: invariant.fingerprint(key),
                rep: rep.clone(),
            });
            by_key.insert(key.clone(), TypeId(id as u32));
        }
        debug_assert!(types[0].rep.is_empty());

        let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for u in 0..n {
            for v in 0..n {
                let t = composition[u][v].index();
                edge_set.insert((u, t));
                edge_set.insert((v, t));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, t) in edge_set {
            adjacency[u].push(t);
        }
        let condensation = Condensation::new(&adjacency);
        let terminal = condensation.terminal_components();
        if terminal.len() != 1 {
            return Err(Error::TerminalSccNotUnique(terminal.len()));
        }
        let mut star = vec![false; n];
        for &v in &condensation.components[terminal[0]] {
            star[v] = true;
        }

        Ok(Self {
            types,
            composition,
            adjacency,
            condensation,
            star,
            invariant,
            by_key,
            seed_size: opts.seed_size,
        })
    }

    pub fn invariant(&self) -> &I {
        &self.invariant
    }

    pub fn seed_size(&self) -> usize {
        self.seed_size
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = TypeId> + '_ {
        (0..self.types.len() as u32).map(TypeId)
    }

    pub fn empty_type(&self) -> TypeId {
        TypeId(0)
    }

    pub fn info(&self, t: TypeId) -> &TypeInfo {
        &self.types[t.index()]
    }

    pub fn rep(&self, t: TypeId) -> &Permutation {
        &self.types[t.index()].rep
    }

    /// `H(t1, t2)`.
    pub fn compose(&self, t1: TypeId, t2: TypeId) -> TypeId {
        self.composition[t1.index()][t2.index()]
    }

    /// Out-neighbours of every type in the dependency graph.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn edges(&self) -> Vec<(TypeId, TypeId)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ts)| ts.iter().map(move |&t| (TypeId(u as u32), TypeId(t as u32))))
            .collect()
    }

    pub fn condensation(&self) -> &Condensation {
        &self.condensation
    }

    pub fn is_star(&self, t: TypeId) -> bool {
        self.star[t.index()]
    }

    pub fn star(&self) -> Vec<TypeId> {
        self.ids().filter(|&t| self.is_star(t)).collect()
    }

    pub fn bullet(&self) -> Vec<TypeId> {
        self.ids().filter(|&t| !self.is_star(t)).collect()
    }

    /// Star types, bullet types and the condensation DAG.
    pub fn scc_partition(&self) -> (Vec<TypeId>, Vec<TypeId>, &Condensation) {
        (self.star(), self.bullet(), &self.condensation)
    }

    /// Pairs `(t1, t2)` with `H(t1, t2) = t`, for every `t`.
    pub fn preimages(&self) -> Vec<Vec<(TypeId, TypeId)>> {
        let mut out = vec![Vec::new(); self.len()];
        for a in self.ids() {
            for b in self.ids() {
                out[self.compose(a, b).index()].push((a, b));
            }
        }
        out
    }

    /// Class of an arbitrary permutation computed from scratch; `None` when
    /// the class is not realized in `Av(231)`.
    pub fn classify(&mut self, sigma: &Permutation) -> Result<Option<TypeId>> {
        let key = self.invariant.key(sigma)?;
        Ok(self.by_key.get(&key).copied())
    }

    /// Type of a 231-avoider of any size, by folding the composition table
    /// over its max-rooted Cartesian tree in linear time.
    pub fn fold_type(&self, sigma: &Permutation) -> Result<TypeId> {
        if !sigma.avoids_231() {
            return Err(Error::Contains231(sigma.clone()));
        }
        let (left, right, root) = sigma.max_cartesian_tree();
        let Some(root) = root else {
            return Ok(self.empty_type());
        };
        let tree = BinaryTree {
            left,
            right,
            root: Some(root),
        };
        Ok(self.fold_tree(&tree))
    }

    /// Type of the permutation encoded by a binary tree.
    pub fn fold_tree(&self, tree: &BinaryTree) -> TypeId {
        let mut ty = vec![self.empty_type(); tree.len()];
        for v in tree.post_order() {
            let v = v as usize;
            let l = tree.left[v].map_or(self.empty_type(), |c| ty[c as usize]);
            let r = tree.right[v].map_or(self.empty_type(), |c| ty[c as usize]);
            ty[v] = self.compose(l, r);
        }
        tree.root.map_or(self.empty_type(), |r| ty[r as usize])
    }

    pub fn invariant_mut(&mut self) -> &mut I {
        &mut self.invariant
    }
}
