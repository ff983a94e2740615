//! Serializable views of the pipeline's results.

use serde::{Deserialize, Serialize};
use toto_core::inference::{Classification, LimitReport, MonteCarlo};
use toto_core::kakeya::EventSpec;
use toto_core::logic::Formula;
use toto_core::series::{DlwCheck, SpectralEstimate};
use toto_core::types::{Invariant, TypeSystem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeJson {
    pub id: u32,
    /// Comma-separated one-line notation of the smallest realizer.
    pub rep: String,
    pub size: usize,
    pub star: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeSystemJson {
    pub k: usize,
    pub seed_size: usize,
    pub types: Vec<TypeJson>,
    /// `composition[t1][t2] = H(t1, t2)`.
    pub composition: Vec<Vec<u32>>,
    /// Dependency edges `u -> t`.
    pub edges: Vec<[u32; 2]>,
    pub star: Vec<u32>,
    pub bullet: Vec<u32>,
}

impl TypeSystemJson {
    pub fn new<I: Invariant>(ts: &TypeSystem<I>, k: usize) -> Self {
        Self {
            k,
            seed_size: ts.seed_size(),
            types: ts
                .ids()
                .map(|t| TypeJson {
                    id: t.0,
                    rep: ts.rep(t).to_string(),
                    size: ts.rep(t).len(),
                    star: ts.is_star(t),
                })
                .collect(),
            composition: ts.ids().map(|a| ts.ids().map(|b| ts.compose(a, b).0).collect()).collect(),
            edges: ts.edges().into_iter().map(|(u, t)| [u.0, t.0]).collect(),
            star: ts.star().iter().map(|t| t.0).collect(),
            bullet: ts.bullet().iter().map(|t| t.0).collect(),
        }
    }
}

/// Graphviz rendering of the dependency graph; star types drawn doubled.
pub fn type_graph_dot<I: Invariant>(ts: &TypeSystem<I>) -> String {
    let mut out = String::from("digraph types {\n  rankdir=LR;\n");
    for t in ts.ids() {
        let rep = ts.rep(t).to_string();
        let label = if rep.is_empty() { "∅".to_string() } else { rep };
        let shape = if ts.is_star(t) { "doublecircle" } else { "circle" };
        out.push_str(&format!("  t{} [label=\"{}: {}\", shape={}];\n", t.0, t.0, label, shape));
    }
    for (u, t) in ts.edges() {
        out.push_str(&format!("  t{} -> t{};\n", u.0, t.0));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloJson {
    pub n: usize,
    pub samples: usize,
    pub empirical: f64,
    pub stderr: f64,
}

impl From<MonteCarlo> for MonteCarloJson {
    fn from(m: MonteCarlo) -> Self {
        Self {
            n: m.n,
            samples: m.samples,
            empirical: m.empirical,
            stderr: m.stderr,
        }
    }
}

pub fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::PositiveLimit => "positive-limit",
        Classification::ExponentialDecay => "exponential-decay",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReportJson {
    pub sentence: String,
    pub k: usize,
    #[serde(rename = "N")]
    pub order: usize,
    pub t_psi: Vec<u32>,
    pub limit: f64,
    pub error: f64,
    pub tolerance: f64,
    pub classification: String,
    pub kappa_bound: Option<f64>,
    pub monte_carlo: Option<MonteCarloJson>,
}

impl LimitReportJson {
    pub fn new(r: &LimitReport, order: usize) -> Self {
        Self {
            sentence: r.sentence.to_string(),
            k: r.k,
            order,
            t_psi: r.estimate.types.iter().map(|t| t.0).collect(),
            limit: r.estimate.limit,
            error: r.estimate.error,
            tolerance: r.estimate.tolerance,
            classification: classification_name(r.estimate.classification).into(),
            kappa_bound: r.estimate.kappa_bound,
            monte_carlo: r.monte_carlo.map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventSpecJson {
    pub target: String,
    pub epsilon: String,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    #[serde(rename = "Fprime")]
    pub f_prime: Vec<String>,
    pub negated: bool,
    /// Exact weighted sum of the sets, `a/b`.
    pub sum: String,
    /// Exact limiting probability of the event, `a/b`.
    pub limit: String,
    pub sentence: String,
    pub qdepth: usize,
}

impl EventSpecJson {
    pub fn new(spec: &EventSpec, target: &str, epsilon: &str, sentence: &Formula) -> Self {
        Self {
            target: target.into(),
            epsilon: epsilon.into(),
            f: spec.f.iter().map(ToString::to_string).collect(),
            f_prime: spec.f_prime.iter().map(ToString::to_string).collect(),
            negated: spec.negated,
            sum: spec.sum.to_string(),
            limit: spec.limit().to_string(),
            sentence: sentence.to_string(),
            qdepth: sentence.qdepth(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl From<SpectralEstimate> for SpectralJson {
    fn from(s: SpectralEstimate) -> Self {
        Self {
            radius: s.radius,
            lower: s.lower,
            upper: s.upper,
            iterations: s.iterations,
            converged: s.converged,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DlwJson {
    pub condition: String,
    pub pass: bool,
    pub detail: String,
    pub residual: Option<f64>,
}

impl From<&DlwCheck> for DlwJson {
    fn from(c: &DlwCheck) -> Self {
        Self {
            condition: c.condition.into(),
            pass: c.pass,
            detail: c.detail.clone(),
            residual: c.residual,
        }
    }
}
