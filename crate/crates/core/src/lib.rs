//! Exact computations with finite-dimensional group-graded algebras.
//!
//! The crate builds graded algebras from structural data (twisted group
//! algebras, elementary gradings, tensor products, induced quotient
//! gradings), decides grading properties such as strongness, computes
//! polynomial-identity invariants (Jacobson radical, Wedderburn block degrees,
//! exponent, codimensions, PI degree) and constructs the graded embeddings of
//! group algebras into `F^αH ⊗ M_k ⊗ M_d`, checking each exhaustively.
//!
//! All scalars live in a cyclotomic field `Q(ζ_m)` and every result is exact.

pub mod cocycles;
pub mod cyclo;
pub mod embed;
pub mod error;
pub mod galg;
pub mod groups;
pub mod par;
pub mod structure;

pub use error::{Error, Result};
