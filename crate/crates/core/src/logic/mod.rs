//! First-order logic over two linear orders: syntax, semantics, EF games
//! and logical types.

pub mod ef;
pub mod eval;
pub mod fingerprint;
pub mod formula;
pub mod parse;

pub use ef::{ef_winner, ef_winner_capped, EfCaps, Winner};
pub use eval::{models, Checker};
pub use fingerprint::{fingerprint, k_equivalent, FingerprintCaps, TypeFingerprint, TypeInterner, TypeKey};
pub use formula::{Formula, Relation};
pub use parse::{parse_formula, parse_sentence};
