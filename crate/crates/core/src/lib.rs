//! Explicit constant-mean-curvature surfaces in ℍ²×ℝ and E(κ,τ), residual
//! checks for their compatibility equations, exact polynomial identities,
//! and congruence classification of half-plane isometries.

pub mod ambient;
pub mod catalog;
pub mod compat;
pub mod diffgeo;
pub mod error;
pub mod fd;
pub mod grid;
pub mod linalg;
pub mod moebius;
pub mod pairs;
pub mod polyverify;

pub use error::{CmcError, Result};
