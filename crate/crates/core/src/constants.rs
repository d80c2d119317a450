//! Calibrated normalisation constants, pinned after calibration and guarded
//! by regression tests.

use std::f64::consts::PI;

/// Version tag of this constants table, echoed in reports.
pub const CONSTANTS_VERSION: &str = "1";

/// Constant in the Hecke–Bochner transport
/// `e^{−tH}(gY)(rω) = c_d r^m Y(ω) T_t^{α+m} g̃(r)`, with the Laguerre
/// semigroup normalised by ψ_k^α and Funk–Hecke carrying |S^{d−2}|.
pub const HECKE_BOCHNER_CD: f64 = 1.0;

/// Prefactor of the closed form `p_t(z) = c_d (sinh t)^{−d} e^{−|z|² coth t / 4}`
/// that matches the series `(2π)^{−d} Σ e^{−(2k+d)t} φ_k(z)`.
pub fn special_heat_cd(d: usize) -> f64 {
    (4.0 * PI).powi(-(d as i32))
}

/// Ratio of the series-normalised constant to the `(2π)^{−d}` prefactor
/// sometimes quoted for the closed form.
pub fn special_heat_cd_ratio(d: usize) -> f64 {
    special_heat_cd(d) / (2.0 * PI).powi(-(d as i32))
}
