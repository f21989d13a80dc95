//! Slow, independent reference evaluations.
//!
//! * [`psi_quadrature`] and [`phase_derivative_quadrature`] integrate the
//!   exact nonoscillatory integral representation of `psi` numerically.
//! * [`legendre_recurrence`] runs the three-term recurrence for integer
//!   degree.
//! * [`p_hypergeometric`] sums the Gauss series of `P` for small degree.
//!
//! None of these share code with the asymptotic expansion beyond the
//! double-double phase factor.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::dd::{cis_shifted_product, DoubleDouble};
use crate::error::{Error, Result};
pub use crate::quadrature::QuadratureSpec;
use crate::quadrature::integrate;

/// Smallest angle accepted by [`legendre_recurrence`]; the recurrence loses
/// accuracy as `theta -> 0`.
pub const RECURRENCE_MIN_THETA: f64 = 0.05;
/// Largest degree accepted by [`legendre_recurrence`].
pub const RECURRENCE_MAX_DEGREE: usize = 100_000;
/// Largest degree accepted by [`p_hypergeometric`].
pub const HYPERGEOMETRIC_MAX_DEGREE: f64 = 30.0;
const HYPERGEOMETRIC_MAX_TERMS: usize = 10_000;

fn check_angle(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Domain("theta must lie in (0, pi/2)"))
    }
}

fn check_degree(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > -1.0 {
        Ok(())
    } else {
        Err(Error::Domain("degree must be finite and greater than -1"))
    }
}

/// The substituted integrals
///
/// ```text
/// I_m = ∫_0^∞ 2 u^(2m) du / ( sqrt(u^2 - 2iβ) (1 + u^2)^(p + m) ),   β = sin θ e^(iθ)
/// ```
///
/// obtained from the integral representation of `psi` by the rotation
/// `t = β x` and then `t = u^2`, which removes the inverse square root at the
/// origin. `sigma = I_0`, and `sigma' = -p e^(iθ)/sin θ · I_1`.
struct SubstitutedIntegral {
    p: f64,
    /// `2 sin^2 θ - 2i sin θ cos θ`, i.e. `-2iβ`.
    shift: Complex64,
    breakpoints: Vec<f64>,
}

impl SubstitutedIntegral {
    fn new(nu: f64, theta: f64, spec: &QuadratureSpec) -> Self {
        let p = nu + 1.0;
        let (s, c) = libm::sincos(theta);
        let shift = Complex64::new(2.0 * s * s, -2.0 * s * c);
        // (1 + U^2)^(-p) <= abs_tol
        let upper = libm::sqrt(libm::expm1(-libm::log(spec.abs_tol) / p));
        // Panels refine geometrically from the scale of the near-singularity
        // at u ~ sqrt(2 sin θ) and of the peak width 1/sqrt(p).
        let inner = libm::fmin(libm::fmin(libm::sqrt(2.0 * s), 1.0 / libm::sqrt(p)), 1.0) / 4.0;
        let mut breakpoints = Vec::new();
        breakpoints.push(0.0);
        let mut x = inner;
        while x < upper {
            breakpoints.push(x);
            x *= 2.0;
        }
        breakpoints.push(upper);
        SubstitutedIntegral {
            p,
            shift,
            breakpoints,
        }
    }

    fn eval(&self, extra_power: i32, spec: &QuadratureSpec) -> Result<Complex64> {
        let exponent = self.p + extra_power as f64;
        let integrand = |u: f64| {
            let u2 = u * u;
            // (1 + u^2)^(-exponent), formed in log space
            let decay = libm::exp(-exponent * libm::log1p(u2));
            let root = (Complex64::new(u2, 0.0) + self.shift).sqrt();
            let mut numerator = 2.0 * decay;
            for _ in 0..extra_power {
                numerator *= u2;
            }
            Complex64::new(numerator, 0.0) / root
        };
        integrate(integrand, &self.breakpoints, spec).map(|e| e.value)
    }
}

/// `psi(theta) = P(cos theta) - (2/π) i Q(cos theta)` by adaptive quadrature
/// of its integral representation.
pub fn psi_quadrature(nu: f64, theta: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    check_degree(nu)?;
    check_angle(theta)?;
    let integral = SubstitutedIntegral::new(nu, theta, spec);
    let sigma = integral.eval(0, spec)?;
    let phase = cis_shifted_product(nu, 1.0, theta);
    Ok(Complex64::new(0.0, -2.0 / PI) * phase * sigma)
}

/// `alpha'(theta) = Im(psi'/psi) = (nu + 1) + Im(sigma'/sigma)` by
/// adaptive quadrature.
pub fn phase_derivative_quadrature(nu: f64, theta: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_degree(nu)?;
    check_angle(theta)?;
    let integral = SubstitutedIntegral::new(nu, theta, spec);
    let sigma = integral.eval(0, spec)?;
    let first = integral.eval(1, spec)?;
    let (s, c) = libm::sincos(theta);
    let sigma_prime = Complex64::new(c, s) * first * (-integral.p / s);
    let ratio = sigma_prime / sigma;
    if !ratio.im.is_finite() {
        return Err(Error::Numerical("degenerate quadrature ratio"));
    }
    Ok(integral.p + ratio.im)
}

/// `(P_n(cos theta), Q_n(cos theta))` by upward three-term recurrence.
pub fn legendre_recurrence(n: usize, theta: f64) -> Result<(f64, f64)> {
    if !(RECURRENCE_MIN_THETA..FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain("recurrence requires 0.05 <= theta < pi/2"));
    }
    if n > RECURRENCE_MAX_DEGREE {
        return Err(Error::Domain("recurrence degree limited to 100000"));
    }
    let x = libm::cos(theta);
    // Q0 = (1/2) ln((1 + x)/(1 - x)) = -ln(tan(theta/2))
    let q0 = -libm::log(libm::tan(0.5 * theta));
    let (mut p_prev, mut p) = (1.0, x);
    let (mut q_prev, mut q) = (q0, x * q0 - 1.0);
    if n == 0 {
        return Ok((p_prev, q_prev));
    }
    for k in 1..n {
        let kf = k as f64;
        let scale = 1.0 / (kf + 1.0);
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) * scale;
        let q_next = ((2.0 * kf + 1.0) * x * q - kf * q_prev) * scale;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    Ok((p, q))
}

/// `P_nu(cos theta) = 2F1(-nu, nu + 1; 1; sin^2(theta/2))`, summed until a
/// term falls below `tol` relative to the partial sum.
///
/// The terms alternate in sign and grow large before they decay, so both the
/// term recurrence and the sum are carried in double-double arithmetic; the
/// only binary64 rounding left is in `sin(theta/2)` itself.
pub fn p_hypergeometric(nu: f64, theta: f64, tol: f64) -> Result<f64> {
    if !(0.0..=HYPERGEOMETRIC_MAX_DEGREE).contains(&nu) {
        return Err(Error::Domain("hypergeometric series limited to 0 <= nu <= 30"));
    }
    check_angle(theta)?;
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    let half = libm::sin(0.5 * theta);
    let z = DoubleDouble::product(half, half);
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = term;
    for k in 0..HYPERGEOMETRIC_MAX_TERMS {
        let kf = k as f64;
        // (k - nu)(k + nu + 1) is formed exactly; (k + 1)^2 is exact.
        let ratio = DoubleDouble::product(kf - nu, kf + nu + 1.0)
            .div(DoubleDouble::from_f64((kf + 1.0) * (kf + 1.0)));
        term = term.mul(ratio).mul(z);
        sum = sum.add(term);
        let t = libm::fabs(term.to_f64());
        if t == 0.0 || (kf > nu && t <= tol * libm::fabs(sum.to_f64())) {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::NoConvergence("hypergeometric series"))
}
