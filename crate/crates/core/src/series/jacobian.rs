//! The Jacobian `M_{t,u} = ∂F_t/∂C_u` of the refined system at its solution.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{CoeffSource, CoeffTable};
use crate::catalan::CatalanCache;
use crate::error::{Error, Result};
use crate::types::{Invariant, TypeId, TypeSystem};

/// `M_{t,u} = z (Σ_{v : H(u,v) = t} C_v + Σ_{v : H(v,u) = t} C_v)` kept in
/// structural form: for each `(t, u)` the multiset of series `C_v`.
#[derive(Clone, Debug)]
pub struct JacobianSeries<'a> {
    terms: Vec<Vec<Vec<(TypeId, u32)>>>,
    coeffs: &'a CoeffTable,
}

/// Columns whose coefficients disagree with `2 z C(z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColumnSumReport {
    pub checked: usize,
    pub mismatches: Vec<(TypeId, usize)>,
}

impl ColumnSumReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Multiplicity lists `terms[t][u]`.
fn structure<I: Invariant>(ts: &TypeSystem<I>) -> Vec<Vec<Vec<(TypeId, u32)>>> {
    let d = ts.len();
    let mut terms = vec![vec![Vec::<(TypeId, u32)>::new(); d]; d];
    let mut bump = |t: TypeId, u: TypeId, v: TypeId| {
        let cell = &mut terms[t.index()][u.index()];
        match cell.iter_mut().find(|(w, _)| *w == v) {
            Some((_, m)) => *m += 1,
            None => cell.push((v, 1)),
        }
    };
    for u in ts.ids() {
        for v in ts.ids() {
            bump(ts.compose(u, v), u, v);
            bump(ts.compose(v, u), u, v);
        }
    }
    for row in terms.iter_mut() {
        for cell in row.iter_mut() {
            cell.sort_unstable();
        }
    }
    terms
}

pub fn jacobian<'a, I: Invariant>(ts: &TypeSystem<I>, coeffs: &'a CoeffTable) -> JacobianSeries<'a> {
    assert_eq!(ts.len(), coeffs.num_types(), "coefficient table belongs to another system");
    JacobianSeries {
        terms: structure(ts),
        coeffs,
    }
}

impl JacobianSeries<'_> {
    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    /// The series `C_v` (with multiplicity) making up `M_{t,u} / z`.
    pub fn terms(&self, t: TypeId, u: TypeId) -> &[(TypeId, u32)] {
        &self.terms[t.index()][u.index()]
    }

    /// `[z^n] M_{t,u}`.
    pub fn coefficient(&self, t: TypeId, u: TypeId, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        self.terms(t, u)
            .iter()
            .map(|&(v, m)| self.coeffs.get(v, n - 1) * m)
            .sum()
    }

    /// `[z^n] Σ_t M_{t,u}`.
    pub fn column_sum(&self, u: TypeId, n: usize) -> BigUint {
        self.weighted(&self.column_weights(u), n)
    }

    /// Total multiplicity of each `C_v` over column `u`.
    fn column_weights(&self, u: TypeId) -> Vec<u32> {
        let mut weight = vec![0u32; self.dim()];
        for row in &self.terms {
            for &(v, m) in &row[u.index()] {
                weight[v.index()] += m;
            }
        }
        weight
    }

    /// `[z^n] z Σ_v weight[v] C_v`.
    fn weighted(&self, weight: &[u32], n: usize) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        weight
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(v, &w)| self.coeffs.get(TypeId(v as u32), n - 1) * w)
            .sum()
    }

    /// Compares every column sum with `2 z C(z)` for all orders up to the
    /// truncation, using Catalan numbers computed independently.
    pub fn check_column_sums(&self) -> ColumnSumReport {
        let order = self.order();
        let cat = CatalanCache::with_order(order);
        let mut report = ColumnSumReport::default();
        for u in (0..self.dim()).map(|u| TypeId(u as u32)) {
            let weight = self.column_weights(u);
            for n in 0..=order {
                let want = if n == 0 { BigUint::zero() } else { cat.at(n - 1) * 2u32 };
                report.checked += 1;
                if self.weighted(&weight, n) != want {
                    report.mismatches.push((u, n));
                }
            }
        }
        report
    }
}

/// Numeric Jacobian at a point, with the truncation defect of its columns.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix {
    pub z0: f64,
    pub order: usize,
    /// `entries[t][u]`.
    pub entries: Vec<Vec<f64>>,
    /// The exact column sum `2 z0 C(z0)` of the untruncated Jacobian.
    pub column_sum_limit: f64,
    /// `column_sum_limit` minus the truncated column sum.
    pub tail: f64,
}

impl JacobianMatrix {
    pub fn column_sums(&self) -> Vec<f64> {
        let d = self.entries.len();
        (0..d).map(|u| self.entries.iter().map(|row| row[u]).sum()).collect()
    }

    /// Principal submatrix on `ids`.
    pub fn restrict(&self, ids: &[TypeId]) -> Vec<Vec<f64>> {
        ids.iter()
            .map(|t| ids.iter().map(|u| self.entries[t.index()][u.index()]).collect())
            .collect()
    }
}

/// `C(z0) = (1 - sqrt(1 - 4 z0)) / (2 z0)`.
fn catalan_gf(z0: f64) -> f64 {
    (1.0 - libm::sqrt(1.0 - 4.0 * z0)) / (2.0 * z0)
}

fn check_point(z0: f64) -> Result<()> {
    if z0 > 0.0 && z0 <= 0.25 {
        Ok(())
    } else {
        Err(Error::EvaluationPoint(z0))
    }
}

/// `Σ_{m < order} c_v(m) z0^m` for every type.
pub fn partial_sums<S: CoeffSource>(src: &S, z0: f64) -> Result<Vec<f64>> {
    check_point(z0)?;
    let x = 4.0 * z0;
    Ok((0..src.num_types())
        .map(|v| {
            let mut w = 1.0;
            let mut s = 0.0;
            for m in 0..src.order() {
                s += src.scaled(TypeId(v as u32), m) * w;
                w *= x;
            }
            s
        })
        .collect())
}

/// Values `C_v(1/4)` with the tail `Σ_{n >= order} A_v n^{-3/2}` of each
/// star type restored from its amplitude (`amplitude[v] = 0` for bullet
/// types, whose tails are negligible).
pub fn tail_corrected_values<S: CoeffSource>(src: &S, amplitude: &[f64]) -> Result<Vec<f64>> {
    let mut vals = partial_sums(src, 0.25)?;
    let n = src.order() as f64;
    let tail = 2.0 / libm::sqrt(n - 0.5);
    for (v, a) in vals.iter_mut().zip(amplitude) {
        *v += a * tail;
    }
    Ok(vals)
}

/// Numeric `M(z0)` from given values `C_v(z0)`.
pub fn jacobian_from_values<I: Invariant>(ts: &TypeSystem<I>, values: &[f64], z0: f64) -> Vec<Vec<f64>> {
    let d = ts.len();
    let mut m = vec![vec![0.0; d]; d];
    for u in ts.ids() {
        for v in ts.ids() {
            let c = z0 * values[v.index()];
            m[ts.compose(u, v).index()][u.index()] += c;
            m[ts.compose(v, u).index()][u.index()] += c;
        }
    }
    m
}

/// `M(z0)` from the partial sums of every `C_v` up to the truncation order:
/// entry `(t, u)` is `Σ_{n <= order} [z^n] M_{t,u} z0^n`.
pub fn eval_jacobian_at<I: Invariant, S: CoeffSource>(ts: &TypeSystem<I>, src: &S, z0: f64) -> Result<JacobianMatrix> {
    let values = partial_sums(src, z0)?;
    let entries = jacobian_from_values(ts, &values, z0);
    // every column sums to 2 z0 Σ_{m < order} Cat_m z0^m
    let mut w = 1.0;
    let mut cat = 0.0;
    let x = 4.0 * z0;
    let mut q = 1.0f64;
    for m in 0..src.order() {
        cat += q * w;
        w *= x;
        q *= (2.0 * (2 * m + 1) as f64) / ((m + 2) as f64) / 4.0;
    }
    let limit = 2.0 * z0 * catalan_gf(z0);
    Ok(JacobianMatrix {
        z0,
        order: src.order(),
        entries,
        column_sum_limit: limit,
        tail: limit - 2.0 * z0 * cat,
    })
}
