//! Ornstein-Uhlenbeck diffusion of GUE and complex Ginibre matrices, Monte
//! Carlo observables and the exact solutions they are checked against.

// negated comparisons are deliberate: they reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analytic;
pub mod diffusion;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod observables;
pub mod rng;
pub mod stats;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    block_trace, quaternion_embed, EnsembleBatch, GinibreMatrix, HermitianMatrix, Mat2, OUParams, QuaternionArgument,
    SquareComplexMatrix, C64,
};
