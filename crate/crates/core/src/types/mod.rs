//! Finite type systems of 231-avoiders under the max-decomposition.

pub mod graph;
pub mod invariant;
pub mod lemma;
pub mod system;

pub use graph::{induced_strongly_connected, tarjan_scc, Condensation};
pub use lemma::{verify_composition_exhaustive, verify_composition_lemma, LemmaReport, Violation};
pub use invariant::{DecompositionShape, FoTypes, Invariant};
pub use system::{build_type_system, BuildOptions, TypeId, TypeInfo, TypeSystem};
