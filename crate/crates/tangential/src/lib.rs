//! Exact-arithmetic computer algebra for the deformation theory of
//! homogeneous polynomials: Jacobian-ideal graded pieces, smoothness via
//! Groebner bases, tangential smoothing constructions and obstructions,
//! and brute-force finite-field oracles for projective equivalence,
//! pencil reducibility and binary-form automorphisms.
//!
//! All arithmetic is exact, over arbitrary-precision rationals or a prime
//! field F_p. Start with [`poly::parse_poly`] to build a homogeneous form,
//! then feed it to [`jacobian::jacobian_piece`], [`smoothness::is_smooth`]
//! or the operations in [`deform`] and [`orbit`]. The `examples/`
//! directory has one runnable walkthrough per capability.

pub mod cli;
pub mod deform;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod scalar;
pub mod smoothness;

pub use error::{Error, Result};
