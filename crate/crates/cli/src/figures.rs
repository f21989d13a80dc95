//! Data behind the two plots: error against angle, and the phase derivative
//! on a uniform grid.

use std::f64::consts::FRAC_PI_2;

use clap::ValueEnum;
use legendre_phase::coeffs::coefficients;
use legendre_phase::{phase_derivative, phase_derivative_quadrature, EvaluationPoint, SamplePlan};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::eval::Method;
use crate::output::{Cell, Table};
use crate::tables::{psi_error_matrix, reference_spec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    /// log10 relative error of psi per order, against theta.
    #[value(name = "error_vs_theta", alias = "error-vs-theta")]
    ErrorVsTheta,
    /// The phase derivative on a uniform grid.
    #[value(name = "alpha_prime", alias = "alpha-prime")]
    AlphaPrime,
}

/// Errors are clamped here before taking logarithms, so exact agreement
/// plots as a finite floor instead of `-inf`.
pub const ERROR_FLOOR: f64 = 1e-18;

pub const ALPHA_GRID_POINTS: usize = 500;

/// Midpoints `(i + 1/2) (π/2) / count`.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| (i as f64 + 0.5) * FRAC_PI_2 / count as f64)
        .collect()
}

/// Sample angles in increasing order with `log10(max(err, floor))` per order.
pub fn error_vs_theta(nu: f64, orders: &[usize], plan: &SamplePlan) -> CliResult<Table> {
    if orders.is_empty() {
        return Err(CliError::Usage("need at least one order".into()));
    }
    let mut thetas = plan.points()?;
    thetas.sort_by(f64::total_cmp);
    let errors = psi_error_matrix(nu, &thetas, orders)?;
    let mut t = Table::new(
        std::iter::once("theta".to_string()).chain(orders.iter().map(|n| format!("log10_err_n{n}"))),
    );
    for (i, &theta) in thetas.iter().enumerate() {
        let mut row = vec![Cell::Num(theta)];
        row.extend(errors.iter().map(|col| Cell::Num(col[i].max(ERROR_FLOOR).log10())));
        t.push(row);
    }
    Ok(t)
}

/// `theta, alpha_prime` on the uniform grid, by the expansion (order `n`)
/// or by quadrature.
pub fn alpha_prime(nu: f64, n: usize, method: Method, points: usize) -> CliResult<Table> {
    if points == 0 {
        return Err(CliError::Usage("grid must have at least one point".into()));
    }
    let grid = uniform_grid(points);
    let values: Vec<f64> = match method {
        Method::Asymptotic => {
            EvaluationPoint::new(nu, grid[0], n)?;
            let c = coefficients(n, nu)?;
            grid.par_iter()
                .map(|&t| Ok(phase_derivative(&EvaluationPoint::new(nu, t, n)?, &c)?))
                .collect::<CliResult<_>>()?
        }
        Method::Oracle => {
            let spec = reference_spec();
            grid.par_iter()
                .map(|&t| Ok(phase_derivative_quadrature(nu, t, &spec)?))
                .collect::<CliResult<_>>()?
        }
        Method::Stieltjes => {
            return Err(CliError::Usage(
                "the cosine sum gives no phase derivative; use asymptotic or oracle".into(),
            ))
        }
    };
    let mut t = Table::new(["theta", "alpha_prime"]);
    for (&theta, &a) in grid.iter().zip(&values) {
        t.push(vec![theta.into(), a.into()]);
    }
    Ok(t)
}
