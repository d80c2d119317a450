//! Weighted mixed norms `L^{p,2}`, radial `A_p` weights, kernel decay probes
//! and randomized norm-ratio experiments.

mod decay;
mod experiments;
mod norms;
mod weights;

pub use decay::{
    beta_integral, beta_ratio, hormander_integral, hormander_report, kernel_decay_report, lemma24_report, random_beta_samples, random_hormander_pairs,
    BetaReport, BetaSample, DecayBound, DecayKernel, DecayReport, HormanderOptions, HormanderReport, HormanderSide, HormanderValue, DECAY_SCHEMA_VERSION,
};
pub use experiments::{
    negative_control, norm_ratio_experiment, norm_ratio_sweep, ExperimentConfig, ExperimentMetadata, NegativeControl, ProbeOperator, Quantiles, RatioReport,
    TrialRecord, BIDEGREE, HERMITE_ORDER, LAGUERRE_DEGREE, REPORT_SCHEMA_VERSION, SPECIAL_DEGREE, SPHERICAL_DEGREE,
};
pub use norms::{mixed_norm, sphere_energies, RadialGrid, Space};
pub use weights::{ap_constant, ball_measure, mu_alpha, radial_bridge, ApInterval, ApReport, BridgeReport, BridgeRow, IntervalFamily, WeightKind, WeightSpec};
