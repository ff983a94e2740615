//! Word-size modular arithmetic for the exact coefficient engine.

use alloc::vec;
use alloc::vec::Vec;

/// Every prime used is below this bound, so 256 products of residues fit
/// in a `u64` accumulator.
pub(crate) const PRIME_BOUND: u32 = 1 << 28;

/// Primes below [`PRIME_BOUND`], largest first, produced lazily.
pub(crate) struct Primes {
    small: Vec<u32>,
    next: u32,
}

impl Primes {
    pub fn new() -> Self {
        let limit = 1usize << 14; // sqrt of the bound
        let mut composite = vec![false; limit + 1];
        let mut small = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                small.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        Self {
            small,
            next: PRIME_BOUND - 1,
        }
    }

    fn is_prime(&self, n: u32) -> bool {
        self.small
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
    }
}

impl Iterator for Primes {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.next > 2 {
            let n = self.next;
            self.next -= 1;
            if self.is_prime(n) {
                return Some(n);
            }
        }
        None
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}
