//! Special functions, exact polynomial algebra and orthonormal harmonic bases.

pub mod basis;
pub mod functions;
pub mod poly;

pub use basis::{bigraded_basis, bigraded_basis_up_to, real_basis_up_to, real_spherical_basis, BigradedHarmonic, HarmonicBasisElement};
pub use functions::*;
pub use poly::{ComplexPoly, RealPoly};
