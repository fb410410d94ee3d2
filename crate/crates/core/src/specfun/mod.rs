//! Special functions and quadrature rules used by the kernels and transforms.

mod bessel;
mod harmonics;
mod laguerre;
mod moments;
mod quadrature;
mod wigner;

pub use bessel::{spherical_bessel_j, spherical_bessel_j_upto};
pub use harmonics::{legendre_p, spherical_harmonic, LegendreTable};
pub use laguerre::{laguerre_k, laguerre_k_upto};
pub use moments::{ln_radial_moment_integral, radial_moment_integral};
pub use quadrature::{QuadratureKind, QuadratureRule};
pub use wigner::{ln_factorial, wigner_3j, wigner_d_beta, wigner_small_d_all};
