//! The Marchenko-Pastur distribution.
//!
//! For aspect ratio `g >= 1` and entry variance `s2` the law is supported
//! on `[u_minus, u_plus] = [s2 (1 - sqrt g)^2, s2 (1 + sqrt g)^2]` with
//! density `sqrt((u_plus - x)(x - u_minus)) / (2 pi x s2)`.
//!
//! Moments come by two independent routes: numeric quadrature of the
//! density, and the weighted Narayana sum `s2^L sum_k g^k N(L, k)`. The two
//! must agree; the tests and the acceptance suite hold them to 1e-7.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::narayana_row;
use crate::error::{Error, Result};
use crate::quad;

/// Quadrature width doublings before [`MpDistribution::moment_numeric`]
/// reports failure.
const MAX_DOUBLINGS: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpDistribution {
    gamma: f64,
    sigma2: f64,
    u_minus: f64,
    u_plus: f64,
}

impl MpDistribution {
    /// `gamma >= 1`; ratios below one are handled by the companion-matrix
    /// reflection in the rescaling layer, not here.
    pub fn new(gamma: f64, sigma2: f64) -> Result<Self> {
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("MP law needs gamma >= 1, got {gamma}")));
        }
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(Error::Domain(format!("MP law needs sigma2 > 0, got {sigma2}")));
        }
        let root = gamma.sqrt();
        Ok(MpDistribution {
            gamma,
            sigma2,
            u_minus: sigma2 * (1.0 - root) * (1.0 - root),
            u_plus: sigma2 * (1.0 + root) * (1.0 + root),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Left support edge `s2 (1 - sqrt g)^2`.
    pub fn u_minus(&self) -> f64 {
        self.u_minus
    }

    /// Right support edge `s2 (1 + sqrt g)^2`, the soft edge.
    pub fn u_plus(&self) -> f64 {
        self.u_plus
    }

    /// Density at `x`; zero outside the support.
    pub fn density(&self, x: f64) -> f64 {
        if x <= self.u_minus || x >= self.u_plus {
            return 0.0;
        }
        ((self.u_plus - x) * (x - self.u_minus)).sqrt()
            / (2.0 * std::f64::consts::PI * x * self.sigma2)
    }

    /// Integrand of `int x^(L-1) d(theta)` after the edge substitution
    /// `x = u_minus + (u_plus - u_minus) sin^2 theta`, which absorbs both
    /// square-root endpoint singularities and, at `gamma = 1`, the `1/x`
    /// pole at the origin (only powers >= 1 reach this).
    fn edge_integrand(&self, theta: f64, power: i32) -> f64 {
        debug_assert!(power >= 1);
        let width = self.u_plus - self.u_minus;
        let sin = theta.sin();
        let x = self.u_minus + width * sin * sin;
        let sin2t = (2.0 * theta).sin();
        let base = width * width / (4.0 * std::f64::consts::PI * self.sigma2);
        base * x.powi(power - 1) * sin2t * sin2t
    }

    /// `int x^L` against the law by adaptive panel doubling; relative
    /// accuracy 1e-8 or an explicit error.
    pub fn moment_numeric(&self, order: u32) -> Result<f64> {
        if order == 0 {
            return Ok(1.0);
        }
        if order > 60 {
            return Err(Error::Domain(format!(
                "numeric moments are conditioned up to L = 60, got {order}"
            )));
        }
        let f = |theta: f64| self.edge_integrand(theta, order as i32);
        let mut panels = 1;
        let mut previous = quad::integrate_panels(&f, 0.0, std::f64::consts::FRAC_PI_2, panels, 64);
        for _ in 0..MAX_DOUBLINGS {
            panels *= 2;
            let current = quad::integrate_panels(&f, 0.0, std::f64::consts::FRAC_PI_2, panels, 64);
            if (current - previous).abs() <= 1e-9 * current.abs().max(f64::MIN_POSITIVE) {
                return Ok(current);
            }
            previous = current;
        }
        Err(Error::Quadrature(format!(
            "moment L={order} (gamma={}, sigma2={}) did not stabilize after {panels} panels",
            self.gamma, self.sigma2
        )))
    }

    /// Distribution function, by quadrature of the substituted density.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.u_minus {
            return 0.0;
        }
        if x >= self.u_plus {
            return 1.0;
        }
        let width = self.u_plus - self.u_minus;
        let theta_x = ((x - self.u_minus) / width).sqrt().min(1.0).asin();
        let base = width * width / (4.0 * std::f64::consts::PI * self.sigma2);
        let f = |theta: f64| {
            let sin = theta.sin();
            if self.u_minus == 0.0 {
                // gamma = 1: sin^2(2 theta) / x reduces to 4 cos^2 / width.
                let cos = theta.cos();
                base * 4.0 * cos * cos / width
            } else {
                let sin2t = (2.0 * theta).sin();
                base * sin2t * sin2t / (self.u_minus + width * sin * sin)
            }
        };
        let mut panels = 2;
        let mut value = quad::integrate_panels(&f, 0.0, theta_x, panels, 64);
        for _ in 0..MAX_DOUBLINGS {
            panels *= 2;
            let refined = quad::integrate_panels(&f, 0.0, theta_x, panels, 64);
            let stable = (refined - value).abs() <= 1e-12 * refined.abs().max(1e-12);
            value = refined;
            if stable {
                break;
            }
        }
        value.clamp(0.0, 1.0)
    }

    /// Moment by the exact weighted Narayana sum; see [`mp_moment_narayana`].
    pub fn moment_narayana(&self, order: u32) -> f64 {
        mp_moment_narayana(order, self.gamma, self.sigma2)
    }
}

/// `s2^L sum_{k=1}^{L} g^k N(L, k)`.
///
/// The sum is accumulated exactly: the IEEE double `g` is itself a dyadic
/// rational `m 2^e`, so `sum N(L,k) m^k 2^(e k)` is an integer ratio that
/// is evaluated in big-integer arithmetic and rounded once at the end.
pub fn mp_moment_narayana(order: u32, gamma: f64, sigma2: f64) -> f64 {
    if order == 0 {
        return 1.0;
    }
    let order = order as u64;
    assert!(gamma > 0.0 && gamma.is_finite(), "gamma must be positive");
    let (mantissa, exponent) = decode_f64(gamma);
    let mut numerator = BigUint::zero();
    let mut denominator_shift: u64 = 0;
    if exponent >= 0 {
        let eu = exponent as u64;
        for (idx, value) in narayana_row(order).iter().enumerate() {
            let k = idx as u64 + 1;
            numerator += value * BigUint::from(mantissa).pow(k as u32) << (eu * k);
        }
    } else {
        // Common denominator 2^(|e| L).
        let eu = (-exponent) as u64;
        denominator_shift = eu * order;
        for (idx, value) in narayana_row(order).iter().enumerate() {
            let k = idx as u64 + 1;
            numerator += value * BigUint::from(mantissa).pow(k as u32) << (eu * (order - k));
        }
    }
    ratio_to_f64(&numerator, denominator_shift) * sigma2.powi(order as i32)
}

/// Splits a positive finite f64 into `(mantissa, exponent)` with
/// `x = mantissa * 2^exponent` exactly.
fn decode_f64(x: f64) -> (u64, i64) {
    let bits = x.to_bits();
    let raw_exponent = ((bits >> 52) & 0x7ff) as i64;
    let raw_mantissa = bits & 0xf_ffff_ffff_ffff;
    let (mut mantissa, mut exponent) = if raw_exponent == 0 {
        (raw_mantissa, -1074)
    } else {
        (raw_mantissa | (1 << 52), raw_exponent - 1075)
    };
    while mantissa != 0 && mantissa & 1 == 0 {
        mantissa >>= 1;
        exponent += 1;
    }
    (mantissa, exponent)
}

/// `numerator / 2^shift` as f64.
fn ratio_to_f64(numerator: &BigUint, shift: u64) -> f64 {
    if numerator.is_zero() {
        return 0.0;
    }
    let bits = numerator.bits();
    if bits <= 1000 && shift < 1000 {
        return numerator.to_f64().expect("in range") / 2f64.powi(shift as i32);
    }
    // Keep ~96 significant bits and track the exponent separately.
    let drop = bits.saturating_sub(96);
    let top = (numerator >> drop).to_f64().expect("96 bits fit");
    top * 2f64.powi(drop as i32 - shift as i32)
}
