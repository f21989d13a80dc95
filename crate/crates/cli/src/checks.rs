//! The invariant suite behind `selftest`: cheap checks that need no sample
//! sweep. Each returns the measured quantity and the limit it must meet.

use std::f64::consts::{FRAC_PI_2, PI};

use legendre_phase::hankel::{cylinder_real, scaled_hankel_with, Regime};
use legendre_phase::{
    closed_form, eval_psi, eval_psi_prime, legendre_recurrence, p_hypergeometric, psi_quadrature,
    solve, Complex64, EvaluationPoint, QuadratureSpec, SectorArgument,
};

use crate::error::CliResult;
use crate::output::{Cell, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub limit: f64,
}

impl Check {
    fn new(name: &'static str, measured: f64, limit: f64) -> Self {
        Check { name, measured, limit }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        self.measured <= self.limit
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

pub const MOMENT_DEGREES: [f64; 4] = [1e2, 1e3, 1e3 * PI, 1e6];

/// Closed-form weights: `|Σc - 1|`, `|Σ k (a_k - b_k)|`, and the largest
/// relative difference from the numerically solved weights.
pub fn coefficient_checks() -> CliResult<Vec<Check>> {
    let (mut zeroth, mut first, mut solved) = (0.0f64, 0.0f64, 0.0f64);
    for &nu in &MOMENT_DEGREES {
        for n in 2..=6 {
            let c = closed_form(n, nu)?;
            let s = solve(n, nu)?;
            zeroth = zeroth.max((c.zeroth_moment() - 1.0).abs());
            first = first.max(c.first_moment().abs());
            for j in -(n as isize)..=n as isize {
                solved = solved.max(rel(s.weight(j), c.weight(j)));
            }
        }
    }
    Ok(vec![
        Check::new("coeffs_zeroth_moment", zeroth, 1e-13),
        Check::new("coeffs_first_moment", first, 1e-13),
        Check::new("coeffs_closed_vs_solved", solved, 1e-9),
    ])
}

pub const TRIANGLE_ANGLES: [f64; 3] = [0.3, 0.7, 1.2];

/// Pairwise relative disagreement of quadrature and recurrence at integer
/// degrees, and of all three references where the hypergeometric series
/// applies.
pub fn oracle_triangle() -> CliResult<Vec<Check>> {
    let spec = QuadratureSpec::default();
    let mut quad_rec = 0.0f64;
    for &n in &[50usize, 500, 5000] {
        for &t in &TRIANGLE_ANGLES {
            let psi = psi_quadrature(n as f64, t, &spec)?;
            let (p, q) = legendre_recurrence(n, t)?;
            quad_rec = quad_rec.max(rel(psi.re, p)).max(rel(-FRAC_PI_2 * psi.im, q));
        }
    }
    let mut hyper = 0.0f64;
    for &nu in &[10.0, 25.5, 30.0] {
        for &t in &TRIANGLE_ANGLES {
            let h = p_hypergeometric(nu, t, 1e-17)?;
            hyper = hyper.max(rel(psi_quadrature(nu, t, &spec)?.re, h));
            if nu.fract() == 0.0 {
                hyper = hyper.max(rel(legendre_recurrence(nu as usize, t)?.0, h));
            }
        }
    }
    Ok(vec![
        Check::new("triangle_quadrature_vs_recurrence", quad_rec, 1e-10),
        Check::new("triangle_hypergeometric", hyper, 1e-10),
    ])
}

fn psi_at(nu: f64, theta: f64, n: usize) -> CliResult<Complex64> {
    Ok(eval_psi(&EvaluationPoint::new(nu, theta, n)?, &closed_form(n, nu)?)?)
}

/// Worst `|residual| / (nu (nu+1) |psi|)` of Legendre's equation in `theta`,
/// `psi'' + cot(theta) psi' + nu (nu+1) psi = 0`, by central differences.
pub fn ode_residual() -> CliResult<Check> {
    let mut worst = 0.0f64;
    for &nu in &[1e2f64, 1e3, 1e6] {
        // A power of two close to a fixed fraction of the oscillation
        // period, so theta +- h is exact.
        let h = 2f64.powi((2e-3 / (nu + 1.0)).log2().round() as i32);
        for &t in &TRIANGLE_ANGLES {
            let (a, m, b) = (psi_at(nu, t - h, 4)?, psi_at(nu, t, 4)?, psi_at(nu, t + h, 4)?);
            let residual =
                (a - m * 2.0 + b) / (h * h) + (b - a) / (2.0 * h * t.tan()) + m * (nu * (nu + 1.0));
            worst = worst.max(residual.norm() / (nu * (nu + 1.0) * m.norm()));
        }
    }
    Ok(Check::new("ode_residual", worst, 1e-5))
}

/// Relative spread of `sin(theta) (u v' - u' v)` over four angles, where
/// `psi = u + i v`.
pub fn abel_constancy() -> CliResult<Check> {
    let mut worst = 0.0f64;
    for &nu in &[1e3f64, 1e6] {
        let c = closed_form(4, nu)?;
        let w = [0.2, 0.5, 0.9, 1.3]
            .iter()
            .map(|&t| {
                let pt = EvaluationPoint::new(nu, t, 4)?;
                let psi = eval_psi(&pt, &c)?;
                let d = eval_psi_prime(&pt, &c)?;
                Ok(t.sin() * (psi.re * d.im - d.re * psi.im))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        let (lo, hi) = w.iter().fold((f64::MAX, f64::MIN), |(l, h), &x| (l.min(x), h.max(x)));
        worst = worst.max((hi - lo) / hi.abs());
    }
    Ok(Check::new("abel_constancy", worst, 1e-10))
}

/// Cylinder Wronskian on the real line, agreement of neighbouring regimes
/// at both crossovers, and finiteness across the sector up to `|z| = 1e12`.
pub fn hankel_gate() -> CliResult<Vec<Check>> {
    let mut wronskian = 0.0f64;
    for &x in &[0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        let c = cylinder_real(x)?;
        wronskian = wronskian.max(rel(c.j1 * c.y0 - c.j0 * c.y1, 2.0 / (PI * x)));
    }
    let mut crossover = 0.0f64;
    for &(r, a, b) in &[
        (2.0, Regime::Series, Regime::ContinuedFraction),
        (20.0, Regime::ContinuedFraction, Regime::Asymptotic),
    ] {
        for k in 0..=16 {
            let z = SectorArgument::polar(r, FRAC_PI_2 * k as f64 / 16.0)?;
            let x = scaled_hankel_with(z, a)?;
            let y = scaled_hankel_with(z, b)?;
            crossover = crossover.max(crel(x.h0, y.h0)).max(crel(x.h1, y.h1));
        }
    }
    let mut non_finite = 0usize;
    let mut r = 1e-12;
    while r <= 1e12 {
        for k in 0..=16 {
            let z = SectorArgument::polar(r, FRAC_PI_2 * k as f64 / 16.0)?;
            let finite = match scaled_hankel_with(z, Regime::for_modulus(r)) {
                Ok(s) => [s.h0, s.h1, s.derivative()].iter().all(|c| c.re.is_finite() && c.im.is_finite()),
                Err(_) => false,
            };
            non_finite += usize::from(!finite);
        }
        r *= 10f64.sqrt();
    }
    Ok(vec![
        Check::new("hankel_wronskian", wronskian, 1e-13),
        Check::new("hankel_crossover", crossover, 1e-12),
        Check::new("hankel_non_finite_count", non_finite as f64, 0.0),
    ])
}

/// Everything `selftest` runs, in a fixed order.
pub fn all() -> CliResult<Vec<Check>> {
    let mut out = coefficient_checks()?;
    out.extend(oracle_triangle()?);
    out.push(ode_residual()?);
    out.push(abel_constancy()?);
    out.extend(hankel_gate()?);
    Ok(out)
}

pub fn report(checks: &[Check]) -> Table {
    let mut t = Table::new(["check", "measured", "limit", "status"]);
    for c in checks {
        t.push(vec![
            Cell::from(c.name),
            c.measured.into(),
            c.limit.into(),
            Cell::from(if c.passed() { "pass" } else { "fail" }),
        ]);
    }
    t
}
