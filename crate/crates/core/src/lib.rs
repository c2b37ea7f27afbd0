//! Exact computations with derivations of finite-dimensional algebras.
//!
//! Algebras and bimodules are given by rational structure constants. On top
//! of an exact linear algebra kernel the crate computes derivation,
//! Jordan-derivation and inner-derivation spaces, builds matrix algebras
//! `M_n(A)` with their bimodules `M_n(M)`, splits any derivation of such a
//! pair into an inner part plus an entrywise lift, and reconstructs 2-local
//! derivations from their values at two canonical matrices.

pub mod algcore;
pub mod dercalc;
pub mod error;
pub mod exactlin;
pub mod matext;
pub mod sampling;
pub mod twolocal;

pub use error::{Error, Result};
pub use exactlin::Rational;
