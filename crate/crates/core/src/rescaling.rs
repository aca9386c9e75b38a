//! Eigenvalue and trace normalizations around the soft edge.
//!
//! All four conventions are affine in the eigenvalue with positive slope.
//! The adjusted form with `a1 = a2 = 0` is algebraically identical to the
//! basic form; both reduce to
//! `(Np)^{1/6} (N lambda - s2 (sqrt N + sqrt p)^2) / (s2 (sqrt N + sqrt p)^{4/3})`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which normalization produced a value; conventions are never mixed
/// within one report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Convention {
    Basic,
    Adjusted { a1: f64, a2: f64 },
    Companion,
    GammaInf,
}

/// A dimensionless rescaled eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RescaledValue {
    pub value: f64,
    pub convention: Convention,
}

/// The soft edge `u_plus = s2 (1 + sqrt(gamma))^2`.
pub fn soft_edge(gamma: f64, sigma2: f64) -> f64 {
    let root = gamma.sqrt();
    sigma2 * (1.0 + root) * (1.0 + root)
}

/// `mu = gamma^{1/6} (1 + sqrt gamma)^{-4/3} N^{2/3} (lambda - u_plus) / s2`
/// with `gamma = p / N`.
pub fn rescale_basic(lambda: f64, n: usize, p: usize, sigma2: f64) -> RescaledValue {
    let gamma = p as f64 / n as f64;
    let root = gamma.sqrt();
    let value = gamma.powf(1.0 / 6.0) / (1.0 + root).powf(4.0 / 3.0) * (n as f64).powf(2.0 / 3.0)
        / sigma2
        * (lambda - soft_edge(gamma, sigma2));
    RescaledValue { value, convention: Convention::Basic }
}

/// The adjusted finite-size rescaling
///
/// ```text
/// (N lambda - s2 (sqrt(N+a1) + sqrt(p+a2))^2)
/// / (s2 (sqrt(N+a1) + sqrt(p+a2)) (1/sqrt(N+a1) + 1/sqrt(p+a2))^{1/3})
/// ```
pub fn rescale_adjusted(
    lambda1: f64,
    n: usize,
    p: usize,
    sigma2: f64,
    a1: f64,
    a2: f64,
) -> Result<RescaledValue> {
    let na = n as f64 + a1;
    let pa = p as f64 + a2;
    if !(na > 0.0 && pa > 0.0) {
        return Err(Error::Domain(format!(
            "shifted dimensions must stay positive: N+a1={na}, p+a2={pa}"
        )));
    }
    let sum_roots = na.sqrt() + pa.sqrt();
    let numerator = n as f64 * lambda1 - sigma2 * sum_roots * sum_roots;
    let denominator = sigma2 * sum_roots * (1.0 / na.sqrt() + 1.0 / pa.sqrt()).powf(1.0 / 3.0);
    Ok(RescaledValue {
        value: numerator / denominator,
        convention: Convention::Adjusted { a1, a2 },
    })
}

/// Companion-matrix rescaling for the spectrum of `X^* X / p`, using
/// `delta = N / p <= 1`:
/// `mu' = delta^{1/6} (1 + sqrt delta)^{-4/3} p^{2/3} (lambda' / s2 - (1 + sqrt delta)^2)`.
pub fn rescale_companion(
    lambda1_prime: f64,
    n: usize,
    p: usize,
    sigma2: f64,
) -> Result<RescaledValue> {
    if p < n {
        return Err(Error::Domain(format!(
            "companion convention wants p >= N, got N={n}, p={p}"
        )));
    }
    let delta = n as f64 / p as f64;
    let root = delta.sqrt();
    let value = delta.powf(1.0 / 6.0) / (1.0 + root).powf(4.0 / 3.0) * (p as f64).powf(2.0 / 3.0)
        * (lambda1_prime / sigma2 - (1.0 + root) * (1.0 + root));
    Ok(RescaledValue { value, convention: Convention::Companion })
}

/// Normalizers of the wide regime: the edge
/// `v_plus = s2 (1 + 1/sqrt(gamma))^2` of `X X^* / p` and the trace-power
/// length scale `sqrt(gamma) N^{2/3}`.
pub fn gamma_inf_normalizers(n: usize, p: usize, sigma2: f64) -> Result<(f64, f64)> {
    if p < n {
        return Err(Error::Domain(format!(
            "wide-regime normalizers want p >= N, got N={n}, p={p}"
        )));
    }
    let gamma = p as f64 / n as f64;
    let inv_root = 1.0 / gamma.sqrt();
    let v_plus = sigma2 * (1.0 + inv_root) * (1.0 + inv_root);
    let s_scale = gamma.sqrt() * (n as f64).powf(2.0 / 3.0);
    Ok((v_plus, s_scale))
}
