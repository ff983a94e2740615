//! Float views of big integers that stay finite far beyond `f64::MAX`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Splits `x` as `m * 2^e` with `m` holding the top 64 bits.
fn split(x: &BigUint) -> (f64, i64) {
    let bits = x.bits() as i64;
    if bits <= 64 {
        return (x.to_u64().unwrap_or(0) as f64, 0);
    }
    let shift = bits - 64;
    let top = (x >> shift as u64).to_u64().unwrap_or(u64::MAX);
    (top as f64, shift)
}

/// `a / b` as a float; `b` must be nonzero.
pub fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    assert!(!b.is_zero(), "division by zero");
    if a.is_zero() {
        return 0.0;
    }
    let (ma, ea) = split(a);
    let (mb, eb) = split(b);
    let e = (ea - eb).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    libm::scalbn(ma / mb, e)
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = split(x);
    libm::log(m) + e as f64 * core::f64::consts::LN_2
}

/// `x / 4^n` as a float.
pub fn scaled_by_four_pow(x: &BigUint, n: usize) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (m, e) = split(x);
    let e = (e - 2 * n as i64).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    libm::scalbn(m, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ratios_of_huge_numbers() {
        let a = BigUint::one() << 5000u32;
        let b = BigUint::from(3u32) << 4998u32;
        assert!((big_ratio(&a, &b) - 4.0 / 3.0).abs() < 1e-15);
        assert!((ln_big(&a) - 5000.0 * core::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(scaled_by_four_pow(&a, 2500), 1.0);
        assert_eq!(big_ratio(&BigUint::from(7u32), &BigUint::from(2u32)), 3.5);
    }
}
