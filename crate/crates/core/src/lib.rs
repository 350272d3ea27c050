//! Exact finite matrix groups over the Gaussian rationals.

pub mod brackets;
pub mod catalog;
pub mod error;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod rep;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use group::{generate_closure, MatrixGroup, Subgroup};
pub use matrix::ExactMatrix;
pub use scalar::GaussianRational;
