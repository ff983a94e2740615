//! Hypotheses of the Drmota-Lalley-Woods theorem for the star subsystem,
//! where the bullet series act as parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_integer::Integer;

use super::estimate::{estimate_amplitude, estimate_kappa};
use super::jacobian::{jacobian_from_values, tail_corrected_values};
use super::{CoeffSource, CoeffTable};
use crate::types::{induced_strongly_connected, Invariant, TypeId, TypeSystem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DlwOptions {
    /// Bound on `|det(I - M*(1/4))|`.
    pub det_tolerance: f64,
    /// Bullet growth rates must stay below `4 - kappa_margin`.
    pub kappa_margin: f64,
}

impl Default for DlwOptions {
    fn default() -> Self {
        Self {
            det_tolerance: 1e-2,
            kappa_margin: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DlwCheck {
    /// Roman numeral of the hypothesis.
    pub condition: &'static str,
    pub pass: bool,
    pub detail: String,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DlwReport {
    pub checks: Vec<DlwCheck>,
}

impl DlwReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, condition: &str) -> Option<&DlwCheck> {
        self.checks.iter().find(|c| c.condition == condition)
    }
}

fn check(condition: &'static str, pass: bool, detail: String, residual: Option<f64>) -> DlwCheck {
    DlwCheck {
        condition,
        pass,
        detail,
        residual,
    }
}

/// Checks (i)-(vi) on the star system. Support, periodicity and bullet
/// growth rates come from the exact table `rates`; the point
/// `(1/4, C(1/4))` is evaluated from `values`, which may be a longer
/// floating table.
pub fn check_dlw_conditions<I: Invariant, S: CoeffSource>(
    ts: &TypeSystem<I>,
    rates: &CoeffTable,
    values: &S,
    opts: DlwOptions,
) -> DlwReport {
    let star = ts.star();
    let bullet = ts.bullet();
    let pre = ts.preimages();
    let mut checks = Vec::new();

    let quadratic = star
        .iter()
        .filter(|t| pre[t.index()].iter().any(|&(a, b)| ts.is_star(a) && ts.is_star(b)))
        .count();
    checks.push(check(
        "i",
        quadratic > 0,
        format!("{quadratic} star equations have a product of two star unknowns"),
        None,
    ));

    let empty_star = ts.is_star(ts.empty_type());
    checks.push(check(
        "ii",
        !empty_star,
        String::from(if empty_star {
            "the empty type is star, so some equation has a constant term"
        } else {
            "the empty type is bullet; every star equation is divisible by z"
        }),
        None,
    ));

    let constant = star
        .iter()
        .filter(|t| pre[t.index()].iter().any(|&(a, b)| !ts.is_star(a) && !ts.is_star(b)))
        .count();
    let with_z = star.iter().filter(|t| !pre[t.index()].is_empty()).count();
    checks.push(check(
        "iii",
        constant > 0 && with_z > 0,
        format!("{constant} star equations have a term free of star unknowns; {with_z} depend on z"),
        None,
    ));

    let idx: Vec<usize> = star.iter().map(|t| t.index()).collect();
    let connected = induced_strongly_connected(ts.adjacency(), &idx);
    checks.push(check(
        "iv",
        connected,
        format!("star subgraph on {} types strongly connected: {connected}", star.len()),
        None,
    ));

    checks.push(singular_point(ts, rates, values, &star, &bullet, opts));

    let periodic: Vec<usize> = star
        .iter()
        .filter(|&&t| support_period(rates, t) != 1)
        .map(|t| t.index())
        .collect();
    checks.push(check(
        "vi",
        periodic.is_empty(),
        if periodic.is_empty() {
            format!("all {} star series aperiodic up to order {}", star.len(), rates.order())
        } else {
            format!("periodic star series: {periodic:?}")
        },
        None,
    ));
    DlwReport { checks }
}

/// gcd of the gaps of `{n : c_t(n) != 0}`; 0 for at most one nonzero term.
pub fn support_period(table: &CoeffTable, t: TypeId) -> usize {
    let mut it = table.support(t);
    let Some(first) = it.next() else { return 0 };
    it.fold(0, |g, n| g.gcd(&(n - first)))
}

fn singular_point<I: Invariant, S: CoeffSource>(
    ts: &TypeSystem<I>,
    rates: &CoeffTable,
    values: &S,
    star: &[TypeId],
    bullet: &[TypeId],
    opts: DlwOptions,
) -> DlwCheck {
    let mut kappa_max = 0.0f64;
    let mut unresolved = Vec::new();
    for &t in bullet {
        match estimate_kappa(rates, t) {
            Ok(k) => kappa_max = kappa_max.max(k),
            Err(_) => unresolved.push(t.index()),
        }
    }
    let inside = unresolved.is_empty() && kappa_max < 4.0 - opts.kappa_margin;
    let mut amplitude = alloc::vec![0.0; ts.len()];
    for &t in star {
        amplitude[t.index()] = estimate_amplitude(values, t).map_or(0.0, |a| a.value);
    }
    let det = match tail_corrected_values(values, &amplitude) {
        Ok(vals) => {
            let m = jacobian_from_values(ts, &vals, 0.25);
            let d = star.len();
            let a = DMatrix::from_fn(d, d, |i, j| {
                let x = m[star[i].index()][star[j].index()];
                if i == j {
                    1.0 - x
                } else {
                    -x
                }
            });
            a.determinant().abs()
        }
        Err(_) => f64::NAN,
    };
    let small = det <= opts.det_tolerance;
    check(
        "v",
        inside && small,
        format!(
            "|det(I - M*(1/4))| = {det:.3e} (tolerance {:.1e}); max bullet growth rate {kappa_max:.4}{}",
            opts.det_tolerance,
            if unresolved.is_empty() {
                String::new()
            } else {
                format!(", unresolved bullet types {unresolved:?}")
            }
        ),
        Some(det),
    )
}
