//! Exact combinatorics of reductive groups with involution.
//!
//! The crate computes restricted root systems, dual groups of symmetric
//! varieties, weight monoids of symmetric embeddings, loop-group Cartan
//! invariants over truncated Laurent series, and desk-scale multiplicative
//! Higgs data on the projective line, all in exact rational arithmetic.

pub mod scalars;
pub mod linalg;
pub mod par;
pub mod lattice;
pub mod roots;
pub mod invariants;
pub mod involution;
pub mod dualgroup;
pub mod tables;
// pub mod embed;
// pub mod loops;
// pub mod higgs;
