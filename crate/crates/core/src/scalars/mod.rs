//! Scalar backends and exact sparse linear algebra.
//!
//! Everything that decides a dimension, a rank or a containment runs over
//! [`Q`] (GMP rationals). The float backend ([`float`]) exists for the
//! handful of places that need an orthonormal frame.

mod eigen;
mod elim;
pub mod float;
mod gram;
mod sparse;
mod subspace;

pub use eigen::{minimal_polynomial, rational_eigenspaces, rational_roots, Poly};
pub use elim::{kernel_basis, rank, solve, Echelon};
pub use gram::{dense_inverse, Gram};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::Subspace;

pub use rug::Rational as Q;

use std::fmt;

/// Which arithmetic a computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float { bits: u32 },
}

impl Backend {
    pub const DEFAULT_FLOAT_BITS: u32 = 128;

    pub fn float(bits: u32) -> Result<Self, ScalarError> {
        if bits < Self::DEFAULT_FLOAT_BITS {
            return Err(ScalarError::Precision(bits));
        }
        Ok(Backend::Float { bits })
    }
}

/// A tagged scalar value.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Q),
    Float(rug::Float),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(f) => Backend::Float { bits: f.prec() },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Float(f) => f.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{}", float::to_decimal(x, 30)),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("float precision {0} bits is below the 128-bit minimum")]
    Precision(u32),
    #[error("gram matrix is not positive-definite (pivot {pivot} is {value})")]
    NotPositiveDefinite { pivot: usize, value: String },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("minimal polynomial has a factor without rational roots: {0}")]
    IrrationalFactor(String),
    #[error("eigenspace dimensions sum to {got}, expected {expected}")]
    EigenDeficit { got: usize, expected: usize },
    #[error("ill-conditioned spectrum: singular value {value:e} lies within 10x of threshold {threshold:e}")]
    IllConditioned { value: f64, threshold: f64 },
    #[error("dimension mismatch: {0}")]
    Dim(String),
}

/// Shorthand for a small rational.
pub fn q(num: i64, den: i64) -> Q {
    Q::from((num, den))
}

pub fn qi(n: i64) -> Q {
    Q::from(n)
}
