use alloc::vec;
use alloc::vec::Vec;

use super::plan::ConvPlan;
use super::CoeffSource;
use crate::types::{Invariant, TypeId, TypeSystem};

/// Floating-point coefficients `a_t(n) = c_t(n) / 4^n`.
///
/// All terms of the recurrence are nonnegative, so the relative error grows
/// at most linearly in `n`. Types growing slower than `4^n` underflow to
/// zero for large `n`; exponential rates of such types must come from a
/// [`super::CoeffTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledTable {
    order: usize,
    a: Vec<Vec<f64>>,
    /// `Cat_n / 4^n`.
    catalan: Vec<f64>,
}

impl ScaledTable {
    pub fn series(&self, t: TypeId) -> &[f64] {
        &self.a[t.index()]
    }

    pub fn catalan_scaled(&self, n: usize) -> f64 {
        self.catalan[n]
    }
}

impl CoeffSource for ScaledTable {
    fn order(&self) -> usize {
        self.order
    }

    fn num_types(&self) -> usize {
        self.a.len()
    }

    fn ratio(&self, t: TypeId, n: usize) -> f64 {
        self.a[t.index()][n] / self.catalan[n]
    }

    fn scaled(&self, t: TypeId, n: usize) -> f64 {
        self.a[t.index()][n]
    }

    fn ln_coeff(&self, t: TypeId, n: usize) -> Option<f64> {
        let x = self.a[t.index()][n];
        (x > 0.0).then(|| libm::log(x) + n as f64 * core::f64::consts::LN_2 * 2.0)
    }

    fn is_exact(&self) -> bool {
        false
    }
}

/// Scaled coefficients up to `z^order` via
/// `a_t(n) = (1/4) Σ_{H(t1, t2) = t} Σ_m a_{t1}(m) a_{t2}(n - 1 - m)`.
pub fn compute_scaled<I: Invariant>(ts: &TypeSystem<I>, order: usize) -> ScaledTable {
    let plan = ConvPlan::new(ts);
    let types = ts.len();
    let len = order + 1;
    let mut a = vec![vec![0.0f64; len]; types];
    let mut rev = vec![vec![0.0f64; len]; types];
    let mut sums = vec![vec![0.0f64; len]; plan.groups.len()];
    for n in 0..len {
        if n == 0 {
            a[0][0] = 1.0;
        } else {
            for t in 0..types {
                let acc: f64 = plan.by_target[t]
                    .iter()
                    .map(|&g| {
                        let fixed = &rev[plan.groups[g].fixed][len - n..];
                        sums[g][..n].iter().zip(fixed).map(|(x, y)| x * y).sum::<f64>()
                    })
                    .sum();
                a[t][n] = 0.25 * acc;
            }
        }
        for t in 0..types {
            rev[t][order - n] = a[t][n];
        }
        for (g, grp) in plan.groups.iter().enumerate() {
            sums[g][n] = grp.summed.iter().map(|&v| a[v][n]).sum();
        }
    }
    let mut catalan = Vec::with_capacity(len);
    let mut q = 1.0f64;
    for n in 0..len {
        catalan.push(q);
        // Cat_{n+1} / Cat_n = 2(2n+1)/(n+2)
        q *= (2.0 * (2 * n + 1) as f64) / ((n + 2) as f64) / 4.0;
    }
    ScaledTable { order, a, catalan }
}
