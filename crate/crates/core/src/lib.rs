//! Numerical toolkit for Riesz transforms attached to the Hermite operator,
//! Laguerre expansions and the special Hermite operator on ℂ^d.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod kernels;
pub mod mixed_norm;
pub mod operators;
pub mod quadrature;
pub mod specfun;
pub mod sphere_calculus;

pub use error::{Error, Result};
