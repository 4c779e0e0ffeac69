//! Exact evaluation of alternating sums over the Weyl groups of E7 and E8.
//!
//! A sum over W(E7) (2,903,040 terms) or W(E8) (696,729,600 terms) is reduced
//! to 72 or 1920 signed A7/A8 alternants. Each alternant is a generalized
//! Vandermonde determinant in the μ-basis variables.
//!
//! Module map:
//! - [`rootsys`]: root systems, Dynkin labels, μ-basis and inner product
//! - [`weyl`]: reflections, word lengths, orbits
//! - [`branching`]: E7→A7 and E8→A8 weight correspondences
//! - [`permweights`]: word tables and the permutation-weight set
//! - [`schur`]: alternants, the (A_N, A_{N−1}) cascade, Schur functions
//! - [`charkit`]: Weyl sums, characters, dimensions, q-dimensions
//! - [`cli`]: command-line front end

pub mod branching;
pub mod cache;
pub mod charkit;
pub mod checkpoint;
pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod permweights;
pub mod qpoly;
pub mod rootsys;
pub mod schur;
pub mod weyl;

pub use error::{Error, Result};
