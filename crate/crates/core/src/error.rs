use thiserror::Error;

use crate::algcore::Element;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("malformed input: {0}")]
    Shape(String),

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("subspace is not contained in the larger space")]
    NotContained,

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("unknown catalog algebra {0:?}")]
    UnknownCatalog(String),

    #[error("matrix size must be at least 2, got {0}")]
    MatrixSize(usize),

    #[error("linear map has not been certified as a derivation")]
    Uncertified,

    #[error("Leibniz rule fails on basis pair ({i}, {j})")]
    NotDerivation { i: usize, j: usize },

    #[error("recomposition residual is nonzero at basis element {basis_index}")]
    RecompositionFailed { basis_index: usize },

    #[error("no derivation interpolates the oracle at the pair ({x:?}, {y:?})")]
    NotTwoLocal { x: Element, y: Element },

    #[error("element is not a central idempotent commuting with the module: {0}")]
    NotCentralIdempotent(String),

    #[error("unknown perturbation kind {0:?}")]
    UnknownPerturbation(String),
}
