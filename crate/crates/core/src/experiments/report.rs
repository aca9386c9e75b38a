//! Immutable result types of the Monte Carlo experiments.

use serde::Serialize;

use crate::ensembles::EnsembleConfig;
use crate::error::{Error, Result};

/// Empirical CDF of the rescaled largest eigenvalue at the reference
/// anchor abscissae.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McReport {
    pub config: EnsembleConfig,
    pub replications: u32,
    pub a1: f64,
    pub a2: f64,
    /// `(x, F1(x))` pairs at which the empirical CDF is read off.
    pub anchors: Vec<(f64, f64)>,
    pub empirical_cdf: Vec<f64>,
    /// Sorted rescaled values, kept for probability plots.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<Vec<f64>>,
}

impl McReport {
    /// Empirical CDF at an arbitrary abscissa; needs the raw values.
    pub fn empirical_at(&self, x: f64) -> Result<f64> {
        let raw = self
            .raw
            .as_ref()
            .ok_or_else(|| Error::MissingData("raw values were not retained".into()))?;
        Ok(raw.partition_point(|v| *v <= x) as f64 / raw.len() as f64)
    }
}

/// Monte Carlo mean of `(1/N) Tr M^s` against the weighted Narayana sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceMomentReport {
    pub config: EnsembleConfig,
    pub s_n: u32,
    pub replications: u32,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub narayana_value: f64,
    pub relative_gap: f64,
}

/// Fluctuation statistics of the normalized trace power.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltReport {
    pub config: EnsembleConfig,
    pub s_n: u32,
    pub replications: u32,
    pub mean: f64,
    pub sample_variance: f64,
    /// `1 / (beta pi)`.
    pub target_l_beta: f64,
    /// Standardized third central moment.
    pub skewness: f64,
    /// Standardized fourth central moment (3 for a Gaussian).
    pub kurtosis: f64,
}

/// Which edge normalizes the trace powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TraceNormalization {
    /// `Tr (X X^* / (N u_plus))^s`.
    SoftEdge,
    /// `Tr (X X^* / (p v_plus))^s`, the wide regime.
    WideRegime,
}

/// Two-sample comparison of normalized trace powers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalityReport {
    pub config_a: EnsembleConfig,
    pub config_b: EnsembleConfig,
    pub s_n: u32,
    pub replications: u32,
    pub normalization: TraceNormalization,
    pub mean_a: f64,
    pub stderr_a: f64,
    pub mean_b: f64,
    pub stderr_b: f64,
    pub abs_difference: f64,
    pub pooled_stderr: f64,
    /// `|mean_a - mean_b| / pooled_stderr`; zero when both sides coincide.
    pub significance: f64,
    /// Largest single normalized trace power seen on either side.
    pub max_normalized_trace: f64,
}
