use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::modular::{inv_mod, Primes};
use super::plan::ConvPlan;
use super::CoeffSource;
use crate::catalan::CatalanCache;
use crate::numeric::{big_ratio, ln_big, scaled_by_four_pow};
use crate::types::{Invariant, TypeId, TypeSystem};

/// Exact coefficients `c_t(n)` for every type and every `n <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    order: usize,
    c: Vec<Vec<BigUint>>,
    catalan: Vec<BigUint>,
}

impl CoeffTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_types(&self) -> usize {
        self.c.len()
    }

    pub fn get(&self, t: TypeId, n: usize) -> &BigUint {
        &self.c[t.index()][n]
    }

    pub fn series(&self, t: TypeId) -> &[BigUint] {
        &self.c[t.index()]
    }

    pub fn catalan(&self, n: usize) -> &BigUint {
        &self.catalan[n]
    }

    /// `Σ_t c_t(n)`.
    pub fn total(&self, n: usize) -> BigUint {
        self.c.iter().map(|s| &s[n]).sum()
    }

    /// Indices `n` with `c_t(n) != 0`.
    pub fn support(&self, t: TypeId) -> impl Iterator<Item = usize> + '_ {
        self.c[t.index()]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(n, _)| n)
    }
}

impl CoeffSource for CoeffTable {
    fn order(&self) -> usize {
        self.order
    }

    fn num_types(&self) -> usize {
        self.c.len()
    }

    fn ratio(&self, t: TypeId, n: usize) -> f64 {
        big_ratio(&self.c[t.index()][n], &self.catalan[n])
    }

    fn scaled(&self, t: TypeId, n: usize) -> f64 {
        scaled_by_four_pow(&self.c[t.index()][n], n)
    }

    fn ln_coeff(&self, t: TypeId, n: usize) -> Option<f64> {
        let x = &self.c[t.index()][n];
        (!x.is_zero()).then(|| ln_big(x))
    }

    fn is_exact(&self) -> bool {
        true
    }
}

/// Largest block of consecutive orders advanced together.
const BLOCK: usize = 64;

/// Residues of every `c_t(n)` modulo `p`. Values at `n < known` are taken
/// from `exact`; the rest follow the recurrence.
///
/// Orders are processed in blocks `[n0, n0 + b)` with `b <= n0`. Products
/// whose two factors both have index below `n0` are accumulated for the
/// whole block at once (a Toeplitz product that reuses a sliding window);
/// the few remaining products are added as each order is reached.
fn residues(plan: &ConvPlan, order: usize, p: u32, exact: &[Vec<BigUint>], known: usize) -> Vec<Vec<u32>> {
    let types = plan.types;
    let pm = p as u64;
    let len = order + 1;
    // padded so fixed-width windows never run past the end
    let mut fwd = vec![vec![0u32; len + BLOCK]; types];
    let mut sums = vec![vec![0u32; len]; plan.groups.len()];
    let set_sums = |n: usize, fwd: &[Vec<u32>], sums: &mut [Vec<u32>]| {
        for (g, grp) in plan.groups.iter().enumerate() {
            let s: u64 = grp.summed.iter().map(|&v| fwd[v][n] as u64).sum();
            sums[g][n] = (s % pm) as u32;
        }
    };
    let start = known.max(1).min(len);
    for n in 0..start {
        for t in 0..types {
            fwd[t][n] = if n < known {
                (&exact[t][n] % p).to_u32().unwrap_or(0)
            } else {
                u32::from(t == 0 && n == 0)
            };
        }
        set_sums(n, &fwd, &mut sums);
    }
    let mut old = vec![[0u64; BLOCK]; types];
    let mut n0 = start;
    while n0 < len {
        let b = BLOCK.min(n0).min(len - n0);
        for row in old.iter_mut() {
            row[..b].fill(0);
        }
        for (g, grp) in plan.groups.iter().enumerate() {
            let acc = &mut old[grp.target];
            toeplitz_mod(&sums[g][..n0], &fwd[grp.fixed], n0, b, pm, acc);
        }
        for j in 0..b {
            let n = n0 + j;
            for t in 0..types {
                let mut total = old[t][j];
                for &g in &plan.by_target[t] {
                    let (s, a) = (&sums[g], &fwd[plan.groups[g].fixed]);
                    // factor of `a` at index >= n0, then factor of `s` at >= n0
                    let mut part = 0u64;
                    for m in 0..j {
                        part += s[m] as u64 * a[n - 1 - m] as u64;
                    }
                    for m in n0..n {
                        part += s[m] as u64 * a[n - 1 - m] as u64;
                    }
                    total += part % pm;
                }
                fwd[t][n] = (total % pm) as u32;
            }
            set_sums(n, &fwd, &mut sums);
        }
        n0 += b;
    }
    for row in fwd.iter_mut() {
        row.truncate(len);
    }
    fwd
}

/// `acc[j] += Σ_{m < n0} s[m] * a[n0 - 1 + j - m] (mod p)` for `j < b`;
/// entries of `a` at index `>= n0` must still be zero.
fn toeplitz_mod(s: &[u32], a: &[u32], n0: usize, b: usize, p: u64, acc: &mut [u64; BLOCK]) {
    const TILE: usize = 8;
    for jt in (0..b).step_by(TILE) {
        let mut m0 = 0;
        while m0 < n0 {
            let m1 = (m0 + 256).min(n0);
            let mut part = [0u64; TILE];
            for (m, &sm) in s.iter().enumerate().take(m1).skip(m0) {
                let base = n0 - 1 + jt - m;
                let w: &[u32; TILE] = a[base..base + TILE].try_into().expect("padded window");
                for (x, &y) in part.iter_mut().zip(w) {
                    *x += sm as u64 * y as u64;
                }
            }
            for (x, y) in acc[jt..].iter_mut().zip(&part) {
                *x = (*x + y % p) % p;
            }
            m0 = m1;
        }
    }
}

/// Exact coefficients of the refined system
/// `C_t = [t = ∅] + z Σ_{H(t1, t2) = t} C_{t1} C_{t2}` up to `z^order`.
///
/// Residues modulo word-size primes are combined by the Chinese remainder
/// theorem; since `c_t(n) <= Cat_n < 4^n`, a value is final once the
/// modulus exceeds `2 * 4^n`, and later primes start from there.
pub fn compute_coefficients<I: Invariant>(ts: &TypeSystem<I>, order: usize) -> CoeffTable {
    let plan = ConvPlan::new(ts);
    let types = ts.len();
    let mut c = vec![vec![BigUint::zero(); order + 1]; types];
    let mut modulus = BigUint::from(1u32);
    let mut known = 0usize;
    let mut primes = Primes::new();
    while known <= order {
        let p = primes.next().expect("ran out of word-size primes");
        let r = residues(&plan, order, p, &c, known);
        let pm = p as u64;
        let m_mod = (&modulus % p).to_u64().unwrap_or(0);
        let m_inv = inv_mod(m_mod, pm);
        for t in 0..types {
            for n in known..=order {
                let x = &mut c[t][n];
                let xm = (&*x % p).to_u64().unwrap_or(0);
                let d = (r[t][n] as u64 + pm - xm) % pm * m_inv % pm;
                if d != 0 {
                    *x += &modulus * d;
                }
            }
        }
        modulus *= p;
        let bits = modulus.bits() as usize;
        // final when 2 * 4^n <= 2^(bits - 1)
        known = if bits >= 2 { (bits - 2) / 2 + 1 } else { 0 };
    }
    let catalan = CatalanCache::with_order(order).as_slice()[..=order].to_vec();
    CoeffTable { order, c, catalan }
}
