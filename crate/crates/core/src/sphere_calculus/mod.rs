//! Polar-coordinate calculus: harmonic projections, Funk–Hecke and
//! Hecke–Bochner transport, gradient splittings on ℂ^d, and the identities
//! tying d-dimensional Riesz transforms to radial Laguerre operators.

mod complex;
mod covariance;
mod fock;
mod funk_hecke;
mod polar;
mod projection;

pub use complex::{complex_gradients, complex_gradients_sampled, lambda_alternate, lambda_true, prop31_all, prop31_suite, ComplexGradients, Prop31Report};
pub use covariance::{rotation_covariance_hermite, rotation_covariance_special, CovarianceForm, CovarianceReport};
pub use fock::{
    circle_identity, five_term, five_term_terms, semigroup_projection, special_f_coeffs, AngularForm, FiveTermReport, SemigroupReport, SpecialFReport,
};
pub use funk_hecke::{funk_hecke, funk_hecke_check, hecke_bochner_hermite, HeckeBochnerReport};
pub use polar::{laguerre_link, riesz_polar_identity, LaguerreLinkReport, PolarIdentityReport};
pub use projection::{
    bigraded_project, bigraded_project_with, holomorphic_split, project, project_with, BigradedCoefficientField, Profile, SphericalCoefficientField,
};
