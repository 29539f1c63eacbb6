//! Exact rank and inertia optimization for Hermitian matrix-valued functions
//! `A₁ − B₁XB₁*` over the solution sets of linear matrix inequalities
//! `B₂XB₂* ⪰ A₂` (and the `≻`, `⪯`, `≺` variants).
//!
//! Everything that produces a verdict runs over exact Gaussian rationals
//! ([`scalar::Qi`]); a complex-double backend is kept for rank, inertia and
//! pseudoinverse so the two can be compared.

pub mod block;
pub mod cli;
pub mod equations;
pub mod error;
pub mod extremal;
pub mod lmi;
pub mod loewner;
pub mod matrix;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod spectral;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Result, RiaError};
pub use matrix::{as_hermitian, AnyMatrix, FMat, Hermitian, Mat, QHerm, QMat};
pub use scalar::{Backend, Qi, Scalar};
pub use lmi::{LmiProblem, Relation};
pub use spectral::{Inertia, LoewnerClass, ToleranceConfig};
