//! Error and timing tables over a sample plan.
//!
//! Every accuracy figure is a maximum relative error against the quadrature
//! oracle, which is evaluated once per `(nu, theta)` and shared by all
//! orders. Points are evaluated in parallel; results are gathered in input
//! order, so the output depends only on the seed.

use std::f64::consts::PI;

use clap::ValueEnum;
use legendre_phase::coeffs::coefficients;
use legendre_phase::{
    eval_psi, phase_derivative, phase_derivative_quadrature, psi_quadrature, Complex64,
    EvaluationPoint, QuadratureSpec, SamplePlan,
};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};
use crate::timing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Max relative error of psi per order.
    Accuracy,
    /// Max relative error of the phase derivative per order.
    Phase,
    /// Mean seconds per evaluation per order, plus the 16-term cosine sum.
    Timing,
}

/// Degrees `1e2, 1e2·π, 1e3, 1e3·π, 1e4, 1e4·π, 1e5, ..., 1e9`.
pub fn default_degrees() -> Vec<f64> {
    let mut out = Vec::new();
    for e in 2..=9 {
        let base = 10f64.powi(e);
        out.push(base);
        if e <= 4 {
            out.push(base * PI);
        }
    }
    out
}

pub fn default_orders(kind: TableKind) -> Vec<usize> {
    match kind {
        TableKind::Accuracy | TableKind::Phase => (2..=6).collect(),
        TableKind::Timing => (3..=6).collect(),
    }
}

/// Reference error tolerance for every table.
pub fn reference_spec() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-13)
}

fn check_orders(nu: f64, orders: &[usize]) -> CliResult<()> {
    for &n in orders {
        // Written so that a NaN degree is rejected too.
        if (nu + 1.0).partial_cmp(&((n * n) as f64)) != Some(std::cmp::Ordering::Greater) {
            return Err(CliError::Domain(format!(
                "order {n} is not valid at degree {nu}: need nu + 1 > N^2"
            )));
        }
    }
    Ok(())
}

fn header(first: &[&str], orders: &[usize]) -> Vec<String> {
    first
        .iter()
        .map(|s| s.to_string())
        .chain(orders.iter().map(|n| format!("n{n}")))
        .collect()
}

/// Max relative error of `psi` for each order at one degree.
pub fn psi_errors(nu: f64, thetas: &[f64], orders: &[usize]) -> CliResult<Vec<f64>> {
    Ok(psi_error_matrix(nu, thetas, orders)?
        .into_iter()
        .map(|col| col.into_iter().fold(0.0, f64::max))
        .collect())
}

/// Relative errors of `psi`, one vector (in `thetas` order) per order.
pub fn psi_error_matrix(nu: f64, thetas: &[f64], orders: &[usize]) -> CliResult<Vec<Vec<f64>>> {
    check_orders(nu, orders)?;
    let spec = reference_spec();
    let reference: Vec<Complex64> = thetas
        .par_iter()
        .map(|&t| psi_quadrature(nu, t, &spec))
        .collect::<Result<_, _>>()?;
    orders
        .iter()
        .map(|&n| {
            let c = coefficients(n, nu)?;
            thetas
                .par_iter()
                .zip(&reference)
                .map(|(&t, r)| {
                    let psi = eval_psi(&EvaluationPoint::new(nu, t, n)?, &c)?;
                    Ok((psi - r).norm() / r.norm())
                })
                .collect()
        })
        .collect()
}

/// Max relative error of the phase derivative for each order at one degree.
pub fn phase_errors(nu: f64, thetas: &[f64], orders: &[usize]) -> CliResult<Vec<f64>> {
    check_orders(nu, orders)?;
    let spec = reference_spec();
    let reference: Vec<f64> = thetas
        .par_iter()
        .map(|&t| phase_derivative_quadrature(nu, t, &spec))
        .collect::<Result<_, _>>()?;
    orders
        .iter()
        .map(|&n| {
            let c = coefficients(n, nu)?;
            let errs: Vec<f64> = thetas
                .par_iter()
                .zip(&reference)
                .map(|(&t, &r)| {
                    let a = phase_derivative(&EvaluationPoint::new(nu, t, n)?, &c)?;
                    Ok(((a - r) / r).abs())
                })
                .collect::<CliResult<_>>()?;
            Ok(errs.into_iter().fold(0.0, f64::max))
        })
        .collect()
}

fn finite_row(nu: f64, values: &[f64]) -> CliResult<()> {
    if values.iter().all(|v| v.is_finite() && *v >= 0.0) {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("non-finite table entry at degree {nu}")))
    }
}

/// One row per degree. A row is only added once every entry in it is
/// available; any failure aborts the whole table.
pub fn table(kind: TableKind, plan: &SamplePlan, degrees: &[f64], orders: &[usize]) -> CliResult<Table> {
    if degrees.is_empty() || orders.is_empty() {
        return Err(CliError::Usage("need at least one degree and one order".into()));
    }
    let thetas = plan.points()?;
    let method = match kind {
        TableKind::Timing => "timing",
        _ => "asymptotic",
    };
    let mut columns = vec!["method", "nu", "points"];
    if kind == TableKind::Timing {
        columns.push("batches");
    }
    let mut head = header(&columns, orders);
    if kind == TableKind::Timing {
        head.push("stieltjes_m16".into());
    }
    let mut out = Table::new(head);
    for &nu in degrees {
        let mut row: Vec<Cell> = vec![method.into(), nu.into(), thetas.len().into()];
        let values = match kind {
            TableKind::Accuracy => psi_errors(nu, &thetas, orders)?,
            TableKind::Phase => phase_errors(nu, &thetas, orders)?,
            TableKind::Timing => {
                check_orders(nu, orders)?;
                row.push(timing::BATCHES.into());
                let mut v = orders
                    .iter()
                    .map(|&n| timing::asymptotic_seconds(nu, n, &thetas))
                    .collect::<CliResult<Vec<_>>>()?;
                v.push(timing::stieltjes_seconds(nu, 16, &thetas)?);
                v
            }
        };
        finite_row(nu, &values)?;
        row.extend(values.into_iter().map(Cell::Num));
        out.push(row);
    }
    Ok(out)
}
