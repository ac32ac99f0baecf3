//! Exact computations with colour Lie algebras over ℚ and 𝔽_p (p ≥ 5): commutation
//! factors, ε-orthogonal representations, moment maps, curvature tensors, the
//! extension constructions and the covariants μ, ψ, Q.

pub mod algebra;
pub mod alt;
pub mod catalog;
pub mod commands;
pub mod covariants;
pub mod curvature;
pub mod doc;
pub mod error;
pub mod extension;
pub mod graded;
pub mod grading;
pub mod matrix;
pub mod perm;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod verdict;

pub use error::{Error, Result};
pub use scalar::{FieldDescriptor, Scalar};
pub use verdict::{Report, Verdict, Witness};
