//! Legendre functions of large real degree in time independent of the degree.
//!
//! The complex solution `psi(theta) = P(cos theta) - (2/π) i Q(cos theta)` of
//! Legendre's equation is written as an oscillatory exponential
//! `exp(i (nu + 1) theta)` times a short sum of nonoscillatory scaled Hankel
//! functions. From that single evaluation come `P`, `Q`, `psi'` and the
//! derivative of the nonoscillatory phase function, `Im(psi'/psi)`.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. Besides the
//! expansion itself it carries the classical Stieltjes expansion as a
//! baseline and a set of slower, independent reference evaluators used to
//! validate both.
//!
//! ```
//! use legendre_phase::{closed_form, evaluate, EvaluationPoint};
//!
//! let point = EvaluationPoint::new(1000.0, 0.7, 4).unwrap();
//! let coeffs = closed_form(4, 1000.0).unwrap();
//! let value = evaluate(&point, &coeffs).unwrap();
//! assert!(value.alpha_prime > 1000.0);
//! ```
#![no_std]
// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotic;
pub mod coeffs;
pub mod dd;
mod error;
pub mod hankel;
pub mod oracle;
pub mod quadrature;
pub mod sampling;
pub mod stieltjes;

pub use asymptotic::{
    eval_psi, eval_psi_prime, evaluate, legendre_pq, phase_derivative, EvaluationPoint,
    PhaseEvaluation, MIN_THETA,
};
pub use coeffs::{closed_form, solve, CoefficientSet, CoefficientSource};
pub use error::{Error, Result};
pub use hankel::{s_prime, scaled_h0, scaled_h1, SectorArgument};
pub use num_complex::Complex64;
pub use oracle::{
    legendre_recurrence, p_hypergeometric, phase_derivative_quadrature, psi_quadrature,
    QuadratureSpec,
};
pub use sampling::SamplePlan;
pub use stieltjes::{stieltjes_p, StieltjesResult};
