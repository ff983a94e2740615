//! Asymptotic estimators: limits `λ_t`, amplitudes `A_t` and growth rates
//! `κ_t` of the type series.

use alloc::vec::Vec;

use super::CoeffSource;
use crate::error::{Error, Result};
use crate::types::{Invariant, TypeId, TypeSystem};

/// Minimum number of nonzero coefficients for a growth-rate fit.
pub const MIN_SUPPORT: usize = 10;

/// Extrapolated `lim c_t(n) / Cat_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaEstimate {
    pub value: f64,
    pub error: f64,
    /// The type is bullet; `value` is 0 and `error` is the ratio at the
    /// truncation order.
    pub decaying: bool,
    /// `λ_t(N)` at the truncation order `N`.
    pub at_order: f64,
}

/// Extrapolated `lim c_t(n) n^{3/2} / 4^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeEstimate {
    pub value: f64,
    pub error: f64,
    /// `|a(N) - a(N/2)| <= |a(N/2) - a(N/4)|` for `a(n) = c_t(n) n^{3/2} / 4^n`.
    pub cauchy: bool,
}

/// `2 f(n) - f(n/2)` and the same one halving earlier, for a sequence with
/// a `1/n` correction.
fn richardson(f: impl Fn(usize) -> f64, n: usize) -> (f64, f64) {
    let now = 2.0 * f(n) - f(n / 2);
    let before = 2.0 * f(n / 2) - f(n / 4);
    (now, (now - before).abs())
}

fn need_order<S: CoeffSource>(src: &S, needed: usize) -> Result<()> {
    if src.order() < needed {
        return Err(Error::TruncationTooShort {
            needed,
            have: src.order(),
        });
    }
    Ok(())
}

pub fn estimate_lambda<I: Invariant, S: CoeffSource>(ts: &TypeSystem<I>, src: &S, t: TypeId) -> Result<LambdaEstimate> {
    need_order(src, 4)?;
    let n = src.order();
    let at_order = src.ratio(t, n);
    if !ts.is_star(t) {
        return Ok(LambdaEstimate {
            value: 0.0,
            error: at_order,
            decaying: true,
            at_order,
        });
    }
    let (value, error) = richardson(|m| src.ratio(t, m), n);
    Ok(LambdaEstimate {
        value: value.max(0.0),
        error,
        decaying: false,
        at_order,
    })
}

pub fn estimate_amplitude<S: CoeffSource>(src: &S, t: TypeId) -> Result<AmplitudeEstimate> {
    need_order(src, 4)?;
    let n = src.order();
    let a = |m: usize| src.scaled(t, m) * libm::pow(m as f64, 1.5);
    let (value, error) = richardson(a, n);
    let cauchy = (a(n) - a(n / 2)).abs() <= (a(n / 2) - a(n / 4)).abs();
    Ok(AmplitudeEstimate { value, error, cauchy })
}

/// `Â_t`; see [`estimate_amplitude`] for the error and Cauchy diagnostics.
#[allow(non_snake_case)]
pub fn estimate_A<S: CoeffSource>(src: &S, t: TypeId) -> Result<f64> {
    Ok(estimate_amplitude(src, t)?.value)
}

/// Exponential growth rate from a least-squares fit of `ln c_t(n)` over
/// `n ∈ [N/2, N]`.
///
/// A series whose support ends before the window is a polynomial and gets
/// rate 0. Zeros of a floating table may be underflow, so such a table
/// reports insufficient support instead.
pub fn estimate_kappa<S: CoeffSource>(src: &S, t: TypeId) -> Result<f64> {
    let n = src.order();
    let lo = n / 2;
    let support = (0..=n).filter(|&m| src.ln_coeff(t, m).is_some()).count();
    let pts: Vec<(f64, f64)> = (lo..=n)
        .filter_map(|m| src.ln_coeff(t, m).map(|y| (m as f64, y)))
        .collect();
    if pts.is_empty() && src.is_exact() {
        return Ok(0.0);
    }
    if support < MIN_SUPPORT || pts.len() < 2 {
        return Err(Error::InsufficientSupport(t.index(), MIN_SUPPORT));
    }
    let k = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / k, b + y / k));
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    Ok(libm::exp(sxy / sxx))
}
