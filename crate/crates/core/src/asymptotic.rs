//! The expansion itself:
//!
//! ```text
//! psi(θ)  ≈ E Σ_j c_j S(β λ_j)
//! psi'(θ) ≈ E [ i p Σ_j c_j S(β λ_j) + e^(2iθ) Σ_j c_j λ_j S'(β λ_j) ]
//! ```
//!
//! with `E = exp(i (nu + 1) θ)`, `β = sin θ e^(iθ)` (so `dβ/dθ = e^(2iθ)`),
//! nodes `λ_j = p + j q` and weights `c_j` from a [`CoefficientSet`].
//! Both sums are nonoscillatory; all of the oscillation sits in `E`, whose
//! phase is reduced in double-double arithmetic.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::coeffs::CoefficientSet;
use crate::dd::cis_shifted_product;
use crate::error::{Error, Result};
use crate::hankel::{scaled_hankel, SectorArgument};

/// Smallest accepted angle. Below this `sin θ` is within a few hundred
/// binades of underflow and the Hankel arguments lose meaning.
pub const MIN_THETA: f64 = 1e-250;

/// Where to evaluate: degree, angle and expansion order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    nu: f64,
    theta: f64,
    n: usize,
}

impl EvaluationPoint {
    /// Requires `MIN_THETA <= theta < π/2` and `nu + 1 > n^2`.
    pub fn new(nu: f64, theta: f64, n: usize) -> Result<Self> {
        if !nu.is_finite() || nu <= -1.0 {
            return Err(Error::Domain("degree must be finite and greater than -1"));
        }
        if !(MIN_THETA..FRAC_PI_2).contains(&theta) {
            return Err(Error::Domain("theta must lie in [1e-250, pi/2)"));
        }
        let p = nu + 1.0;
        if !(p > (n * n) as f64) {
            return Err(Error::Domain("expansion order too large: need nu + 1 > N^2"));
        }
        Ok(EvaluationPoint { nu, theta, n })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// Everything one evaluation of the expansion yields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEvaluation {
    pub psi: Complex64,
    pub psi_prime: Complex64,
    /// `P_nu(cos θ) = Re psi`.
    pub p_nu: f64,
    /// `Q_nu(cos θ) = -(π/2) Im psi`.
    pub q_nu: f64,
    /// `Im(psi'/psi)`.
    pub alpha_prime: f64,
}

/// The two nonoscillatory sums and the oscillatory factor.
struct Sums {
    oscillation: Complex64,
    value: Complex64,
    slope: Complex64,
    rotation: Complex64,
    p: f64,
}

impl Sums {
    fn psi(&self) -> Complex64 {
        self.oscillation * self.value
    }

    fn psi_prime(&self) -> Complex64 {
        let inner = Complex64::new(0.0, self.p) * self.value + self.rotation * self.slope;
        self.oscillation * inner
    }

    /// `p + Im(e^(2iθ) slope / value)`, which equals `Im(psi'/psi)` without
    /// passing through the oscillatory factor.
    fn alpha_prime(&self) -> Result<f64> {
        if self.value.norm() == 0.0 {
            return Err(Error::Numerical("expansion sum vanished; theta outside supported range"));
        }
        let ratio = self.rotation * self.slope / self.value;
        let alpha = self.p + ratio.im;
        if !alpha.is_finite() {
            return Err(Error::Numerical("phase derivative is not finite"));
        }
        Ok(alpha)
    }
}

fn check_match(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<()> {
    if coeffs.order() != pt.n || coeffs.nu().to_bits() != pt.nu.to_bits() {
        return Err(Error::CoefficientMismatch);
    }
    Ok(())
}

fn sums(pt: &EvaluationPoint, coeffs: &CoefficientSet, with_slope: bool) -> Result<Sums> {
    check_match(pt, coeffs)?;
    let theta = pt.theta;
    let s = libm::sin(theta);
    let mut value = Complex64::new(0.0, 0.0);
    let mut slope = Complex64::new(0.0, 0.0);
    for (c, node) in coeffs.terms() {
        let z = SectorArgument::polar(node * s, theta)?;
        if z.modulus() == 0.0 {
            return Err(Error::Numerical("Hankel argument underflowed"));
        }
        let h = scaled_hankel(z)?;
        value += h.h0 * c;
        if with_slope {
            slope += h.derivative() * (c * node);
        }
    }
    let (s2, c2) = libm::sincos(2.0 * theta);
    Ok(Sums {
        oscillation: cis_shifted_product(pt.nu, 1.0, theta),
        value,
        slope,
        rotation: Complex64::new(c2, s2),
        p: coeffs.p(),
    })
}

/// `psi_nu(θ) = P_nu(cos θ) - (2/π) i Q_nu(cos θ)`.
pub fn eval_psi(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<Complex64> {
    sums(pt, coeffs, false).map(|s| s.psi())
}

/// `d psi_nu / dθ`.
pub fn eval_psi_prime(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<Complex64> {
    sums(pt, coeffs, true).map(|s| s.psi_prime())
}

/// `(P_nu(cos θ), Q_nu(cos θ))`.
pub fn legendre_pq(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<(f64, f64)> {
    let psi = eval_psi(pt, coeffs)?;
    Ok((psi.re, -FRAC_PI_2 * psi.im))
}

/// `alpha'(θ) = Im(psi'/psi)`, the derivative of the nonoscillatory phase.
pub fn phase_derivative(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<f64> {
    sums(pt, coeffs, true)?.alpha_prime()
}

/// All outputs from a single pass over the nodes.
pub fn evaluate(pt: &EvaluationPoint, coeffs: &CoefficientSet) -> Result<PhaseEvaluation> {
    let s = sums(pt, coeffs, true)?;
    let psi = s.psi();
    Ok(PhaseEvaluation {
        psi,
        psi_prime: s.psi_prime(),
        p_nu: psi.re,
        q_nu: -FRAC_PI_2 * psi.im,
        alpha_prime: s.alpha_prime()?,
    })
}

/// `psi` rebuilt from `P` and `Q`: `P - (2/π) i Q`.
pub fn psi_from_pq(p_nu: f64, q_nu: f64) -> Complex64 {
    Complex64::new(p_nu, -2.0 / PI * q_nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{closed_form, solve};

    #[test]
    fn validity_condition() {
        assert!(EvaluationPoint::new(3.0, 0.5, 6).is_err());
        assert!(EvaluationPoint::new(35.0, 0.5, 6).is_err());
        assert!(EvaluationPoint::new(35.5, 0.5, 6).is_ok());
        assert!(EvaluationPoint::new(1000.0, 0.0, 3).is_err());
        assert!(EvaluationPoint::new(1000.0, FRAC_PI_2, 3).is_err());
        assert!(EvaluationPoint::new(f64::INFINITY, 0.5, 3).is_err());
    }

    #[test]
    fn mismatched_coefficients_rejected() {
        let pt = EvaluationPoint::new(1000.0, 0.7, 4).unwrap();
        let wrong_order = closed_form(3, 1000.0).unwrap();
        let wrong_degree = closed_form(4, 1001.0).unwrap();
        assert_eq!(eval_psi(&pt, &wrong_order), Err(Error::CoefficientMismatch));
        assert_eq!(eval_psi(&pt, &wrong_degree), Err(Error::CoefficientMismatch));
    }

    #[test]
    fn evaluate_agrees_with_individual_operations() {
        let pt = EvaluationPoint::new(1234.5, 0.4, 5).unwrap();
        let c = closed_form(5, 1234.5).unwrap();
        let all = evaluate(&pt, &c).unwrap();
        assert_eq!(all.psi, eval_psi(&pt, &c).unwrap());
        assert_eq!(all.psi_prime, eval_psi_prime(&pt, &c).unwrap());
        assert_eq!((all.p_nu, all.q_nu), legendre_pq(&pt, &c).unwrap());
        assert_eq!(all.alpha_prime, phase_derivative(&pt, &c).unwrap());
        let rebuilt = psi_from_pq(all.p_nu, all.q_nu);
        assert!((rebuilt - all.psi).norm() <= 1e-15 * all.psi.norm());
    }

    #[test]
    fn phase_derivative_matches_log_derivative() {
        let pt = EvaluationPoint::new(1000.0, 0.7, 4).unwrap();
        let c = closed_form(4, 1000.0).unwrap();
        let e = evaluate(&pt, &c).unwrap();
        let direct = (e.psi_prime / e.psi).im;
        assert!((direct - e.alpha_prime).abs() <= 1e-12 * e.alpha_prime);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let (nu, theta, h) = (1000.0, 0.7, 1e-6);
        let c = closed_form(4, nu).unwrap();
        let at = |t| eval_psi(&EvaluationPoint::new(nu, t, 4).unwrap(), &c).unwrap();
        let fd = (at(theta + h) - at(theta - h)) / (2.0 * h);
        let exact = eval_psi_prime(&EvaluationPoint::new(nu, theta, 4).unwrap(), &c).unwrap();
        assert!((fd - exact).norm() <= 1e-6 * exact.norm());
    }

    #[test]
    fn large_degree_phase_slope() {
        let nu = 1e6;
        let pt = EvaluationPoint::new(nu, 1.0, 3).unwrap();
        let a = phase_derivative(&pt, &closed_form(3, nu).unwrap()).unwrap();
        assert!((a / (nu + 0.5) - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn solved_and_closed_form_paths_agree() {
        let pt = EvaluationPoint::new(5000.0, 0.3, 6).unwrap();
        let a = eval_psi(&pt, &closed_form(6, 5000.0).unwrap()).unwrap();
        let b = eval_psi(&pt, &solve(6, 5000.0).unwrap()).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn tiny_angles_stay_finite() {
        let c = closed_form(3, 100.0).unwrap();
        for &theta in &[1e-16, 1e-100, MIN_THETA] {
            let e = evaluate(&EvaluationPoint::new(100.0, theta, 3).unwrap(), &c).unwrap();
            assert!(e.psi.re.is_finite() && e.psi.im.is_finite());
            assert!((e.p_nu - 1.0).abs() < 1e-6, "P at {theta}: {}", e.p_nu);
            assert!(e.alpha_prime > 0.0);
        }
    }
}
