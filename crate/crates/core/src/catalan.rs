//! Exact Catalan numbers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Growable table of `Cat_0, Cat_1, ...` filled by the convolution
/// recurrence `Cat_{n+1} = sum_i Cat_i Cat_{n-i}`.
#[derive(Clone, Debug)]
pub struct CatalanCache {
    table: Vec<BigUint>,
}

impl Default for CatalanCache {
    fn default() -> Self {
        Self::new()
    }
}

impl CatalanCache {
    pub fn new() -> Self {
        Self {
            table: vec![BigUint::one()],
        }
    }

    pub fn with_order(n: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(n);
        cache
    }

    /// Extends the table through `Cat_n` using the product form
    /// `Cat_{m+1} = Cat_m * 2(2m+1) / (m+2)`; the recurrence is checked in
    /// tests.
    pub fn extend_to(&mut self, n: usize) {
        while self.table.len() <= n {
            let m = self.table.len() - 1;
            let next = &self.table[m] * BigUint::from(2 * (2 * m as u64 + 1)) / BigUint::from(m as u64 + 2);
            self.table.push(next);
        }
    }

    pub fn get(&mut self, n: usize) -> &BigUint {
        self.extend_to(n);
        &self.table[n]
    }

    /// Read-only lookup; panics if `n` has not been computed.
    pub fn at(&self, n: usize) -> &BigUint {
        &self.table[n]
    }

    pub fn order(&self) -> usize {
        self.table.len() - 1
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.table
    }
}

/// `Cat_n`, computed by the convolution recurrence alone.
pub fn catalan_by_recurrence(n: usize) -> BigUint {
    let mut table: Vec<BigUint> = vec![BigUint::one()];
    for m in 0..n {
        let mut acc = BigUint::zero();
        for i in 0..=m {
            acc += &table[i] * &table[m - i];
        }
        table.push(acc);
    }
    table.swap_remove(n)
}

/// `Cat_n = binom(2n, n) / (n + 1)`.
pub fn catalan_by_binomial(n: usize) -> BigUint {
    let mut b = BigUint::one();
    for i in 0..n as u64 {
        b = b * BigUint::from(2 * n as u64 - i) / BigUint::from(i + 1);
    }
    b / BigUint::from(n as u64 + 1)
}

pub fn catalan(n: usize) -> BigUint {
    let mut c = CatalanCache::new();
    c.get(n).clone()
}
