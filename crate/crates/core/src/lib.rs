//! Exact-arithmetic toolkit for vector-space interference alignment over
//! diagonal (parallel and block-fading) channels.
//!
//! Everything is computed over the rationals: subspaces are kept in reduced
//! row echelon form, so dimensions, intersections and equalities are exact.

pub mod alignment;
pub mod channel;
pub mod cli;
mod echelon;
pub mod error;
pub mod rational;
pub mod sparsity;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use subspace::{BlockProjection, DiagMap, Subspace};
