//! Slepian spatial-spectral concentration on the three-dimensional ball.
//!
//! Concentration kernels in the Fourier-Laguerre and Fourier-Bessel domains, their
//! eigen-decompositions, spherical Shannon numbers, and projection of band-limited
//! signals onto the resulting Slepian basis.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigen;
pub mod error;
pub mod kernels;
pub mod regions;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
