//! Seeded, parallel Monte Carlo experiments.
//!
//! Replications are indexed; each derives its generator purely from
//! `(master_seed, index)`, runs on whatever thread rayon picks, and is
//! reduced in index order afterwards. Reports are therefore byte-identical
//! across thread counts.

mod report;

pub use report::{CltReport, McReport, TraceMomentReport, TraceNormalization, UniversalityReport};

use rayon::prelude::*;

use crate::ensembles::EnsembleConfig;
use crate::error::{Error, Result};
use crate::linalg::trace_power;
use crate::mp_law::{mp_moment_narayana, MpDistribution};
use crate::rescaling::{gamma_inf_normalizers, rescale_adjusted, soft_edge};
use crate::special_functions::tw_quantile;

/// The 11 reference abscissae and F1 percentiles used by the comparison
/// tables.
pub const TABLE1_ANCHORS: [(f64, f64); 11] = [
    (-3.896, 0.01),
    (-3.516, 0.025),
    (-3.180, 0.05),
    (-2.782, 0.10),
    (-2.088, 0.25),
    (-1.269, 0.50),
    (-0.392, 0.75),
    (0.450, 0.90),
    (0.979, 0.95),
    (1.454, 0.975),
    (2.024, 0.99),
];

/// `round(c N^{2/3})`, the moment growth of the soft-edge scale.
pub fn trace_power_length(n: usize, c: f64) -> u32 {
    (c * (n as f64).powf(2.0 / 3.0)).round() as u32
}

/// `round(c sqrt(gamma) N^{2/3})`, its wide-regime counterpart.
pub fn wide_trace_power_length(n: usize, p: usize, c: f64) -> u32 {
    let gamma = p as f64 / n as f64;
    (c * gamma.sqrt() * (n as f64).powf(2.0 / 3.0)).round() as u32
}

fn map_replications<T, F>(replications: u32, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    (0..u64::from(replications))
        .into_par_iter()
        .map(|index| {
            job(index).map_err(|e| Error::Replication { index, source: Box::new(e) })
        })
        .collect()
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Rescaled-largest-eigenvalue study at the standard anchors.
pub fn run_largest_eigenvalue_mc(
    cfg: &EnsembleConfig,
    replications: u32,
    a1: f64,
    a2: f64,
    keep_raw: bool,
) -> Result<McReport> {
    run_largest_eigenvalue_mc_at(cfg, replications, a1, a2, &TABLE1_ANCHORS, keep_raw)
}

/// Same study at caller-chosen anchors.
pub fn run_largest_eigenvalue_mc_at(
    cfg: &EnsembleConfig,
    replications: u32,
    a1: f64,
    a2: f64,
    anchors: &[(f64, f64)],
    keep_raw: bool,
) -> Result<McReport> {
    if replications < 100 {
        return Err(Error::Guard(format!(
            "largest-eigenvalue study wants at least 100 replications, got {replications}"
        )));
    }
    let (n, p, sigma2) = (cfg.n(), cfg.p(), cfg.sigma2());
    // Validate the rescaling parameters once up front.
    rescale_adjusted(0.0, n, p, sigma2, a1, a2)?;
    let mut values = map_replications(replications, |index| {
        let x = cfg.sample_matrix(index);
        let spectrum = x.covariance_spectrum(n)?;
        Ok(rescale_adjusted(spectrum.largest(), n, p, sigma2, a1, a2)?.value)
    })?;
    values.sort_unstable_by(f64::total_cmp);
    let empirical_cdf = anchors
        .iter()
        .map(|&(x, _)| values.partition_point(|v| *v <= x) as f64 / values.len() as f64)
        .collect();
    Ok(McReport {
        config: *cfg,
        replications,
        a1,
        a2,
        anchors: anchors.to_vec(),
        empirical_cdf,
        raw: keep_raw.then_some(values),
    })
}

/// `(F_beta^{-1}((i - 0.5) / R), value_(i))` pairs for a probability plot.
pub fn pp_plot_data(report: &McReport) -> Result<Vec<(f64, f64)>> {
    let raw = report
        .raw
        .as_ref()
        .ok_or_else(|| Error::MissingData("probability plot needs retained raw values".into()))?;
    let beta = report.config.beta().as_u8();
    let r = raw.len() as f64;
    raw.iter()
        .enumerate()
        .map(|(i, &value)| {
            let p = (i as f64 + 0.5) / r;
            Ok((tw_quantile(beta, p)?, value))
        })
        .collect()
}

/// Kolmogorov-Smirnov distance between the empirical spectral CDF of one
/// replication of `X X^* / N` and the Marchenko-Pastur CDF.
pub fn run_mp_ks(cfg: &EnsembleConfig) -> Result<f64> {
    let x = cfg.sample_matrix(0);
    let spectrum = x.covariance_spectrum(cfg.n())?;
    let mp = MpDistribution::new(cfg.gamma(), cfg.sigma2())?;
    let mut ascending: Vec<f64> = spectrum.eigenvalues().to_vec();
    ascending.reverse();
    let n = ascending.len() as f64;
    let mut distance: f64 = 0.0;
    for (i, &lambda) in ascending.iter().enumerate() {
        let f = mp.cdf(lambda);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        distance = distance.max(above.abs()).max(below.abs());
    }
    Ok(distance)
}

/// Monte Carlo check of the weighted Narayana moment formula at powers
/// `s_N << sqrt(N)` (enforced as `s_N <= sqrt(N)/3`).
pub fn run_trace_moment_check(
    cfg: &EnsembleConfig,
    s_n: u32,
    replications: u32,
) -> Result<TraceMomentReport> {
    if replications < 2 {
        return Err(Error::Guard("need at least 2 replications".into()));
    }
    let n = cfg.n();
    if f64::from(s_n) > (n as f64).sqrt() / 3.0 || s_n == 0 {
        return Err(Error::Guard(format!(
            "the moment formula holds for s_N << sqrt(N); require 1 <= s_N <= sqrt(N)/3 \
             = {:.2}, got {s_n}",
            (n as f64).sqrt() / 3.0
        )));
    }
    let values = map_replications(replications, |index| {
        let spectrum = cfg.sample_matrix(index).covariance_spectrum(n)?;
        Ok(trace_power(&spectrum, s_n, 1.0)? / n as f64)
    })?;
    let (mc_mean, mc_stderr) = mean_and_stderr(&values);
    let narayana_value = mp_moment_narayana(s_n, cfg.gamma(), cfg.sigma2());
    Ok(TraceMomentReport {
        config: *cfg,
        s_n,
        replications,
        mc_mean,
        mc_stderr,
        narayana_value,
        relative_gap: (mc_mean - narayana_value) / narayana_value,
    })
}

/// Fluctuations of `Tr (M / u_plus)^{s_N}` in the window
/// `1 << s_N << sqrt(N)`, encoded as `8 <= s_N <= sqrt(N)/2`.
pub fn run_clt_check(cfg: &EnsembleConfig, s_n: u32, replications: u32) -> Result<CltReport> {
    if replications < 2 {
        return Err(Error::Guard("need at least 2 replications".into()));
    }
    let n = cfg.n();
    if f64::from(s_n) < 8.0 || f64::from(s_n) > (n as f64).sqrt() / 2.0 {
        return Err(Error::Guard(format!(
            "the fluctuation window wants 8 <= s_N <= sqrt(N)/2 = {:.2}, got {s_n}",
            (n as f64).sqrt() / 2.0
        )));
    }
    let u_plus = soft_edge(cfg.gamma(), cfg.sigma2());
    let values = map_replications(replications, |index| {
        let spectrum = cfg.sample_matrix(index).covariance_spectrum(n)?;
        trace_power(&spectrum, s_n, u_plus)
    })?;
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / count;
    let m4 = values.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / count;
    Ok(CltReport {
        config: *cfg,
        s_n,
        replications,
        mean,
        sample_variance: m2,
        target_l_beta: 1.0 / (f64::from(cfg.beta().as_u8()) * std::f64::consts::PI),
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2),
    })
}

/// Two-sample universality contrast of normalized trace powers.
///
/// Both configurations must share `(N, p, beta)`; each side is normalized
/// by the edge of its own entry variance. In the wide regime the scale is
/// `gamma v_plus`, which coincides with `u_plus` pathwise, so the same
/// spectrum serves both conventions.
pub fn run_universality_pair(
    cfg_a: &EnsembleConfig,
    cfg_b: &EnsembleConfig,
    s_n: u32,
    replications: u32,
    normalization: TraceNormalization,
) -> Result<UniversalityReport> {
    if replications < 2 {
        return Err(Error::Guard("need at least 2 replications".into()));
    }
    if cfg_a.n() != cfg_b.n() || cfg_a.p() != cfg_b.p() || cfg_a.beta() != cfg_b.beta() {
        return Err(Error::DimensionMismatch(format!(
            "universality pair wants matching (N, p, beta): {}x{} beta {} vs {}x{} beta {}",
            cfg_a.n(),
            cfg_a.p(),
            cfg_a.beta().as_u8(),
            cfg_b.n(),
            cfg_b.p(),
            cfg_b.beta().as_u8()
        )));
    }
    if s_n == 0 {
        return Err(Error::Guard("trace power must be positive".into()));
    }
    let side = |cfg: &EnsembleConfig| -> Result<Vec<f64>> {
        let scale = match normalization {
            TraceNormalization::SoftEdge => soft_edge(cfg.gamma(), cfg.sigma2()),
            TraceNormalization::WideRegime => {
                let (v_plus, _) = gamma_inf_normalizers(cfg.n(), cfg.p(), cfg.sigma2())?;
                cfg.gamma() * v_plus
            }
        };
        map_replications(replications, |index| {
            let spectrum = cfg.sample_matrix(index).covariance_spectrum(cfg.n())?;
            trace_power(&spectrum, s_n, scale)
        })
    };
    let values_a = side(cfg_a)?;
    let values_b = side(cfg_b)?;
    let (mean_a, stderr_a) = mean_and_stderr(&values_a);
    let (mean_b, stderr_b) = mean_and_stderr(&values_b);
    let abs_difference = (mean_a - mean_b).abs();
    let pooled_stderr = (stderr_a * stderr_a + stderr_b * stderr_b).sqrt();
    let significance = if abs_difference == 0.0 { 0.0 } else { abs_difference / pooled_stderr };
    let max_normalized_trace = values_a
        .iter()
        .chain(&values_b)
        .fold(0f64, |m, v| m.max(*v));
    Ok(UniversalityReport {
        config_a: *cfg_a,
        config_b: *cfg_b,
        s_n,
        replications,
        normalization,
        mean_a,
        stderr_a,
        mean_b,
        stderr_b,
        abs_difference,
        pooled_stderr,
        significance,
        max_normalized_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{Beta, EntryDistribution};
    use approx::assert_relative_eq;

    fn mixture_config(n: usize, p: usize, seed: u64) -> EnsembleConfig {
        EnsembleConfig::new(n, p, Beta::One, EntryDistribution::reference_mixture(), seed)
            .unwrap()
    }

    #[test]
    fn trace_power_lengths() {
        assert_eq!(trace_power_length(100, 1.0), 22);
        assert_eq!(wide_trace_power_length(20, 2000, 1.0), 74);
    }

    #[test]
    fn mc_report_is_reproducible_and_monotone() {
        let cfg = mixture_config(10, 20, 77);
        let a = run_largest_eigenvalue_mc(&cfg, 200, 0.0, 0.0, true).unwrap();
        let b = run_largest_eigenvalue_mc(&cfg, 200, 0.0, 0.0, true).unwrap();
        assert_eq!(a, b);
        for pair in a.empirical_cdf.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
        assert!(a.empirical_cdf.iter().all(|v| (0.0..=1.0).contains(v)));
        // Far sentinels.
        assert_eq!(a.empirical_at(-10.0).unwrap(), 0.0);
        assert_eq!(a.empirical_at(10.0).unwrap(), 1.0);
    }

    #[test]
    fn mc_guard_on_replication_count() {
        let cfg = mixture_config(10, 20, 1);
        assert!(matches!(
            run_largest_eigenvalue_mc(&cfg, 50, 0.0, 0.0, false),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn pp_plot_small_case() {
        let cfg = mixture_config(10, 20, 5);
        let report = McReport {
            config: cfg,
            replications: 3,
            a1: 0.0,
            a2: 0.0,
            anchors: TABLE1_ANCHORS.to_vec(),
            empirical_cdf: vec![],
            raw: Some(vec![-1.0, 0.0, 1.0]),
        };
        let pairs = pp_plot_data(&report).unwrap();
        assert_eq!(pairs.len(), 3);
        for (k, (theoretical, value)) in pairs.iter().enumerate() {
            let p = (k as f64 + 0.5) / 3.0;
            assert_relative_eq!(*theoretical, tw_quantile(1, p).unwrap(), epsilon = 1e-12);
            assert_eq!(*value, [-1.0, 0.0, 1.0][k]);
        }
        let without = McReport { raw: None, ..report };
        assert!(matches!(pp_plot_data(&without), Err(Error::MissingData(_))));
    }

    #[test]
    fn pp_plot_recovers_the_identity_line() {
        // Values drawn from F1 itself: quantiles of a uniform stream.
        let cfg = mixture_config(10, 20, 6);
        let r = 400;
        let mut raw: Vec<f64> = (0..r)
            .map(|i| tw_quantile(1, (i as f64 + 0.5) / r as f64).unwrap())
            .collect();
        raw.sort_unstable_by(f64::total_cmp);
        let report = McReport {
            config: cfg,
            replications: r as u32,
            a1: 0.0,
            a2: 0.0,
            anchors: TABLE1_ANCHORS.to_vec(),
            empirical_cdf: vec![],
            raw: Some(raw),
        };
        let pairs = pp_plot_data(&report).unwrap();
        for (theoretical, value) in pairs {
            assert_relative_eq!(theoretical, value, epsilon = 1e-6);
        }
    }

    #[test]
    fn ks_statistic_survives_degenerate_dimensions() {
        let cfg = EnsembleConfig::new(
            1,
            1,
            Beta::One,
            EntryDistribution::standard_gaussian(),
            3,
        )
        .unwrap();
        let d = run_mp_ks(&cfg).unwrap();
        assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn trace_moment_first_power_is_exact_in_expectation() {
        let cfg = mixture_config(64, 128, 11);
        let report = run_trace_moment_check(&cfg, 1, 150).unwrap();
        // (1/N) E Tr M = gamma sigma2 = 4.
        assert_relative_eq!(report.narayana_value, 4.0, max_relative = 1e-12);
        assert!(
            (report.mc_mean - report.narayana_value).abs() <= 3.0 * report.mc_stderr,
            "mean {} stderr {}",
            report.mc_mean,
            report.mc_stderr
        );
    }

    #[test]
    fn trace_moment_guard() {
        let cfg = mixture_config(64, 128, 11);
        assert!(matches!(run_trace_moment_check(&cfg, 3, 10), Err(Error::Guard(_))));
        assert!(matches!(run_trace_moment_check(&cfg, 0, 10), Err(Error::Guard(_))));
    }

    #[test]
    fn clt_guards_and_smoke() {
        let cfg = mixture_config(400, 400, 12);
        assert!(matches!(run_clt_check(&cfg, 4, 50), Err(Error::Guard(_))));
        assert!(matches!(run_clt_check(&cfg, 30, 50), Err(Error::Guard(_))));
        let report = run_clt_check(&cfg, 9, 60).unwrap();
        assert!(report.sample_variance >= 0.0);
        assert_relative_eq!(report.target_l_beta, 1.0 / std::f64::consts::PI);
    }

    #[test]
    fn identical_configurations_have_zero_contrast() {
        let cfg = mixture_config(20, 40, 13);
        let report =
            run_universality_pair(&cfg, &cfg, 7, 50, TraceNormalization::SoftEdge).unwrap();
        assert_eq!(report.abs_difference, 0.0);
        assert_eq!(report.significance, 0.0);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let a = mixture_config(20, 40, 13);
        let b = mixture_config(20, 41, 13);
        assert!(matches!(
            run_universality_pair(&a, &b, 7, 50, TraceNormalization::SoftEdge),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn wide_regime_scale_matches_the_soft_edge_pathwise() {
        // Tr (XX*/p)^s = gamma^{-s} Tr (XX*/N)^s for every sample.
        let cfg = mixture_config(12, 48, 14);
        let spectrum = cfg.sample_matrix(0).covariance_spectrum(cfg.n()).unwrap();
        let gamma = cfg.gamma();
        for s in [1u32, 3, 7] {
            let wide = trace_power(&spectrum, s, gamma).unwrap();
            let narrow = trace_power(&spectrum, s, 1.0).unwrap() / gamma.powi(s as i32);
            assert_relative_eq!(wide, narrow, max_relative = 1e-12);
        }
    }
}
