//! Exact minimax solver for the Ehrenfeucht–Fraïssé game on two
//! permutations.
//!
//! In each of `k` rounds Spoiler picks an element of either board and
//! Duplicator answers on the other one. Duplicator wins if the induced map
//! between picked elements preserves equality and both orders.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    Duplicator,
    Spoiler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EfCaps {
    pub max_size: usize,
    pub max_rounds: usize,
}

impl Default for EfCaps {
    fn default() -> Self {
        Self {
            max_size: 7,
            max_rounds: 3,
        }
    }
}

pub fn ef_winner(alpha: &Permutation, beta: &Permutation, k: usize) -> Result<Winner> {
    ef_winner_capped(alpha, beta, k, EfCaps::default())
}

pub fn ef_winner_capped(alpha: &Permutation, beta: &Permutation, k: usize, caps: EfCaps) -> Result<Winner> {
    let size = alpha.len().max(beta.len());
    if size > caps.max_size {
        return Err(Error::CapExceeded {
            what: "EF board size",
            value: size,
            cap: caps.max_size,
        });
    }
    if k > caps.max_rounds {
        return Err(Error::CapExceeded {
            what: "EF rounds",
            value: k,
            cap: caps.max_rounds,
        });
    }
    let mut game = Game {
        a: alpha.values(),
        b: beta.values(),
        memo: BTreeMap::new(),
    };
    let mut pairs = Vec::with_capacity(k);
    Ok(if game.duplicator_wins(&mut pairs, k) {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    })
}

struct Game<'a> {
    a: &'a [u32],
    b: &'a [u32],
    memo: BTreeMap<(Vec<(u8, u8)>, usize), bool>,
}

impl Game<'_> {
    /// Can `(x, y)` be added to `pairs` keeping a partial isomorphism?
    fn compatible(&self, pairs: &[(u8, u8)], x: u8, y: u8) -> bool {
        pairs.iter().all(|&(px, py)| {
            (px == x) == (py == y)
                && (px < x) == (py < y)
                && (self.a[px as usize] < self.a[x as usize]) == (self.b[py as usize] < self.b[y as usize])
        })
    }

    fn duplicator_wins(&mut self, pairs: &mut Vec<(u8, u8)>, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        let mut key: Vec<(u8, u8)> = pairs.clone();
        key.sort_unstable();
        key.dedup();
        if let Some(&v) = self.memo.get(&(key.clone(), rounds)) {
            return v;
        }
        let result = self.all_spoiler_moves_answered(pairs, rounds);
        self.memo.insert((key, rounds), result);
        result
    }

    fn all_spoiler_moves_answered(&mut self, pairs: &mut Vec<(u8, u8)>, rounds: usize) -> bool {
        // Re-picking an already picked element never helps Spoiler: the
        // mirrored answer keeps the position unchanged.
        for side in [0u8, 1] {
            let (mine, theirs) = if side == 0 {
                (self.a.len(), self.b.len())
            } else {
                (self.b.len(), self.a.len())
            };
            for s in 0..mine as u8 {
                let already = pairs
                    .iter()
                    .any(|&(x, y)| if side == 0 { x == s } else { y == s });
                if already {
                    continue;
                }
                let mut answered = false;
                for d in 0..theirs as u8 {
                    let (x, y) = if side == 0 { (s, d) } else { (d, s) };
                    if !self.compatible(pairs, x, y) {
                        continue;
                    }
                    pairs.push((x, y));
                    let ok = self.duplicator_wins(pairs, rounds - 1);
                    pairs.pop();
                    if ok {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    return false;
                }
            }
        }
        true
    }
}
