//! Semigroups, half powers, ladder operators and Riesz transforms acting on
//! band-limited functions.

mod band;
mod fd;
mod heat;
mod riesz;
mod rotate;
mod singular;
mod special;

pub use band::{
    constant_harmonic, default_nodes, expand, expand_with, from_complex, to_complex, BandLimitedFunction, Basis, ModeLabel, OperatorRoute, MAX_BIDEGREE,
};
pub use fd::{fd_hermite, fd_laguerre, fd_special};
pub use heat::{half_inverse, heat_apply, heat_spectral};
pub use riesz::{hermite_riesz, hermite_riesz_spectral, ladder, laguerre_riesz, Ladder};
pub use rotate::{check_orthogonal, check_unitary, rotate_complex, rotate_real};
pub use special::{special_riesz, twisted_convolve, TwistedOptions};
