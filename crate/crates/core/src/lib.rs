//! Exact structure-constant toolkit for finite-dimensional superbialgebras and
//! Hopf superalgebras over the Gaussian rationals.

pub mod antipode;
pub mod axioms;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod scalar;
pub mod search;
pub mod structures;

pub use error::{Error, Result};
pub use graded::{BasisIndex, GradedVector, Superspace, TensorVector};
pub use scalar::GaussScalar;
pub use structures::{GradedLinearMap, SuperBialgebraData};
