//! Convergence law machinery for uniform random 231-avoiding permutations.
//!
//! The crate builds the finite set of rank-k logical types realized by
//! `Av(231)`, the composition table induced by `sigma = tau ⊕ (1 ⊖ pi)`, the
//! type-refined Catalan system, and from it the limiting probability of any
//! first-order sentence in the language of two orders.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod catalan;
pub mod error;
pub mod inference;
pub mod kakeya;
pub mod logic;
pub mod numeric;
pub mod perm;
pub mod sample;
pub mod series;
pub mod types;

pub use error::{Error, Result};
pub use perm::Permutation;
