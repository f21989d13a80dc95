//! Wall-clock cost per evaluation.
//!
//! One warm-up sweep, then [`BATCHES`] timed sweeps over the sample; the
//! reported figure is the median sweep time divided by the number of points.
//! Coefficients are computed once per degree, outside the timed region.
//! Everything runs on the calling thread.

use std::hint::black_box;
use std::time::Instant;

use legendre_phase::coeffs::coefficients;
use legendre_phase::{evaluate, stieltjes_p, EvaluationPoint};

use crate::error::{CliError, CliResult};

pub const BATCHES: usize = 5;

fn median_seconds_per_point<F: FnMut(f64) -> CliResult<f64>>(thetas: &[f64], mut f: F) -> CliResult<f64> {
    if thetas.is_empty() {
        return Err(CliError::Usage("cannot time an empty sample".into()));
    }
    let mut sweep = || -> CliResult<f64> {
        let start = Instant::now();
        let mut acc = 0.0;
        for &t in thetas {
            acc += f(black_box(t))?;
        }
        black_box(acc);
        Ok(start.elapsed().as_secs_f64())
    };
    sweep()?;
    let mut times = (0..BATCHES).map(|_| sweep()).collect::<CliResult<Vec<_>>>()?;
    times.sort_by(f64::total_cmp);
    Ok(times[BATCHES / 2] / thetas.len() as f64)
}

/// Seconds per call of the full expansion (`psi`, `psi'`, phase derivative).
pub fn asymptotic_seconds(nu: f64, n: usize, thetas: &[f64]) -> CliResult<f64> {
    let c = coefficients(n, nu)?;
    median_seconds_per_point(thetas, |t| {
        let e = evaluate(&EvaluationPoint::new(nu, t, n)?, black_box(&c))?;
        Ok(e.p_nu + e.alpha_prime)
    })
}

/// Seconds per call of the `m`-term cosine sum.
pub fn stieltjes_seconds(nu: f64, m: usize, thetas: &[f64]) -> CliResult<f64> {
    median_seconds_per_point(thetas, |t| Ok(stieltjes_p(black_box(nu), t, m)?.value))
}
