//! Stieltjes' cosine-sum approximation of `P_nu(cos theta)` and its
//! remainder bound, kept as a baseline for accuracy and timing comparisons.
//!
//! ```text
//! P_nu(cos θ) ≈ sqrt(2/(π sin θ)) Σ_{k<M} C_k cos(α_k) / sin^k θ
//! α_k = (nu + k + 1/2) θ - (k + 1/2) π/2
//! |remainder| ≤ sqrt(2/(π sin θ)) C_M / sin^M θ
//! ```
//!
//! `C_0 = Γ(nu+1)/Γ(nu+3/2)` comes from a short even expansion of
//! `τ(x) = sqrt(x) Γ(x+1/4)/Γ(x+3/4)` at `x = nu + 3/4`; later coefficients
//! follow from a two-term recurrence.
//!
//! The bound above is the one usually quoted for this expansion. It is sharp
//! to leading order but not strict: at `nu = 100` the true remainder exceeds
//! it by up to about 7% for `M = 16` (about 0.5% at `nu = 1000`), so treat
//! it as an estimate with a small safety margin rather than a certificate.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::dd::{DoubleDouble, HALF_PI};
use crate::error::{Error, Result};

/// `tau` is only accurate to working precision above this argument.
pub const TAU_MIN_ARGUMENT: f64 = 10.0;

/// Coefficients of `τ(x)` in powers of `1/x^2`.
const TAU_SERIES: [f64; 7] = [
    1.0,
    -1.0 / 64.0,
    21.0 / 8192.0,
    -671.0 / 524_288.0,
    180_323.0 / 134_217_728.0,
    -20_898_423.0 / 8_589_934_592.0,
    7_426_362_705.0 / 1_099_511_627_776.0,
];

/// `sqrt(x) Γ(x + 1/4) / Γ(x + 3/4)` for `x > 10`.
pub fn tau(x: f64) -> Result<f64> {
    if !(x > TAU_MIN_ARGUMENT) || !x.is_finite() {
        return Err(Error::Domain("tau requires a finite argument above 10"));
    }
    let w = 1.0 / (x * x);
    Ok(TAU_SERIES.iter().rev().fold(0.0, |acc, &c| acc * w + c))
}

/// One step of the coefficient recurrence: `C_{k+1}` from `C_k`.
pub fn next_coefficient(nu: f64, k: usize, c_k: f64) -> f64 {
    let kh = k as f64 + 0.5;
    kh * kh / (2.0 * (k as f64 + 1.0) * (nu + k as f64 + 1.5)) * c_k
}

/// The first `m` coefficients `C_{nu,0..m}`.
pub fn c_coefficients(nu: f64, m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Domain("at least one Stieltjes term is required"));
    }
    let x = nu + 0.75;
    let mut c = tau(x)? / libm::sqrt(x);
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        out.push(c);
        c = next_coefficient(nu, k, c);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesResult {
    /// Partial sum approximating `P_nu(cos theta)`.
    pub value: f64,
    /// Estimate of the absolute remainder, `sqrt(2/(π sin θ)) C_M / sin^M θ`.
    pub bound: f64,
    /// Number of terms summed.
    pub m: usize,
}

fn check(nu: f64, theta: f64, m: usize) -> Result<()> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain("theta must lie in (0, pi/2)"));
    }
    if m == 0 {
        return Err(Error::Domain("at least one Stieltjes term is required"));
    }
    tau(nu + 0.75).map(|_| ())
}

/// Partial sum with `m` terms and its remainder bound.
pub fn stieltjes_p(nu: f64, theta: f64, m: usize) -> Result<StieltjesResult> {
    check(nu, theta, m)?;
    let s = libm::sin(theta);
    let inv_s = 1.0 / s;
    let prefactor = libm::sqrt(2.0 / (PI * s));

    // α_0 = (nu + 1/2) θ - π/4, and each further term adds θ - π/2.
    let theta_dd = DoubleDouble::from_f64(theta);
    let alpha0 = DoubleDouble::sum(nu, 0.5)
        .mul(theta_dd)
        .sub(HALF_PI.mul_f64(0.5));
    let step = theta_dd.sub(HALF_PI);

    let x = nu + 0.75;
    let mut c = tau(x)? / libm::sqrt(x);
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 0..m {
        let alpha = alpha0.add(step.mul_f64(k as f64));
        let (cos_alpha, _) = alpha.cos_sin();
        sum += c * power * cos_alpha;
        c = next_coefficient(nu, k, c);
        power *= inv_s;
    }
    let bound = prefactor * c * power;
    Ok(StieltjesResult {
        value: prefactor * sum,
        bound,
        m,
    })
}

/// Remainder bound after `m` terms, without forming the sum.
pub fn remainder_bound(nu: f64, theta: f64, m: usize) -> Result<f64> {
    check(nu, theta, m)?;
    let s = libm::sin(theta);
    let x = nu + 0.75;
    let mut c = tau(x)? / libm::sqrt(x);
    for k in 0..m {
        c = next_coefficient(nu, k, c);
    }
    Ok(libm::sqrt(2.0 / (PI * s)) * c / libm::pow(s, m as f64))
}

/// Term count in `1..=max_m` minimising the remainder bound.
///
/// The bound shrinks while `C_{k+1}/(C_k sin θ) < 1`, i.e. until the
/// asymptotic series starts to diverge.
pub fn optimal_term_count(nu: f64, theta: f64, max_m: usize) -> Result<usize> {
    check(nu, theta, max_m)?;
    let s = libm::sin(theta);
    let mut best = 1;
    let mut c = tau(nu + 0.75)? / libm::sqrt(nu + 0.75);
    c = next_coefficient(nu, 0, c) / s;
    let mut best_bound = c;
    for m in 2..=max_m {
        c = next_coefficient(nu, m - 1, c) / s;
        if c < best_bound {
            best_bound = c;
            best = m;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_tends_to_one() {
        assert!((tau(1e8).unwrap() - 1.0).abs() < 1e-16);
        assert!(tau(10.0).is_err());
        assert!(tau(f64::NAN).is_err());
        // Leading correction at x = 100.
        let t = tau(100.0).unwrap();
        assert!((t - (1.0 - 1.0 / 640_000.0)).abs() < 3e-11);
    }

    #[test]
    fn recurrence_from_exact_anchor() {
        // C_{0,0} = Γ(1)/Γ(3/2) = 2/sqrt(π); C_{0,1} = C_{0,0}/12.
        let c00 = 2.0 / libm::sqrt(PI);
        let c01 = next_coefficient(0.0, 0, c00);
        assert!((c01 - 1.0 / (6.0 * libm::sqrt(PI))).abs() < 1e-16);
    }

    #[test]
    fn coefficients_positive_and_decreasing() {
        let c = c_coefficients(1000.0, 20).unwrap();
        assert!(c.iter().all(|&x| x > 0.0));
        assert!(c.windows(2).all(|w| w[1] < w[0]));
        assert!(c_coefficients(9.0, 3).is_err());
        assert!(c_coefficients(100.0, 0).is_err());
    }

    #[test]
    fn leading_term_matches_large_degree_limit() {
        let nu = 1e6;
        let r = stieltjes_p(nu, 1.0, 1).unwrap();
        let expected = libm::sqrt(2.0 / (PI * libm::sin(1.0)))
            * libm::cos((nu + 0.5) * 1.0 - PI / 4.0)
            / libm::sqrt(nu + 0.75);
        assert!((r.value - expected).abs() < 1e-6 * libm::fabs(expected) + 1e-9);
    }

    #[test]
    fn bound_is_consistent_and_blows_up_near_zero() {
        let r = stieltjes_p(1000.0, 1.0, 16).unwrap();
        let b = remainder_bound(1000.0, 1.0, 16).unwrap();
        assert!((r.bound - b).abs() <= 1e-14 * b);
        assert!(r.bound <= 1e-13 * r.value.abs());
        let near = stieltjes_p(1000.0, 1e-4, 16).unwrap();
        assert!(near.bound > near.value.abs());
    }

    #[test]
    fn optimal_count_near_right_angle_is_large() {
        assert!(optimal_term_count(1000.0, 1.4, 40).unwrap() >= 30);
        assert!(optimal_term_count(1000.0, 1e-3, 40).unwrap() < 5);
    }
}
