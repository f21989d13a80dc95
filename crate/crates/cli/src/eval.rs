//! Single-point evaluation records.

use clap::ValueEnum;
use legendre_phase::coeffs::{coefficients, CoefficientSet, CoefficientSource};
use legendre_phase::{
    evaluate, phase_derivative_quadrature, psi_quadrature, stieltjes_p, EvaluationPoint,
    QuadratureSpec,
};

use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// The nonoscillatory-phase expansion.
    Asymptotic,
    /// The classical cosine sum; `--terms` is the number of terms.
    Stieltjes,
    /// Adaptive quadrature of the integral representation (slow).
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Asymptotic => "asymptotic",
            Method::Stieltjes => "stieltjes",
            Method::Oracle => "oracle",
        }
    }

    pub fn default_terms(self) -> usize {
        match self {
            Method::Asymptotic => 4,
            Method::Stieltjes => 16,
            Method::Oracle => 0,
        }
    }
}

pub const EVAL_COLUMNS: [&str; 10] = [
    "nu", "theta", "N", "P", "Q", "psi_re", "psi_im", "alpha_prime", "method", "bound",
];

/// One evaluation. Fields the method cannot produce are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRecord {
    pub nu: f64,
    pub theta: f64,
    pub n: usize,
    pub p: f64,
    pub q: Option<f64>,
    pub psi_re: Option<f64>,
    pub psi_im: Option<f64>,
    pub alpha_prime: Option<f64>,
    pub method: Method,
    /// Remainder estimate (Stieltjes only).
    pub bound: Option<f64>,
}

impl EvalRecord {
    pub fn table(&self) -> Table {
        let mut t = Table::new(EVAL_COLUMNS);
        t.push(vec![
            self.nu.into(),
            self.theta.into(),
            self.n.into(),
            self.p.into(),
            self.q.into(),
            self.psi_re.into(),
            self.psi_im.into(),
            self.alpha_prime.into(),
            Cell::from(self.method.name()),
            self.bound.into(),
        ]);
        t
    }
}

pub fn eval_with(nu: f64, theta: f64, coeffs: &CoefficientSet) -> CliResult<EvalRecord> {
    let point = EvaluationPoint::new(nu, theta, coeffs.order())?;
    let e = evaluate(&point, coeffs)?;
    Ok(EvalRecord {
        nu,
        theta,
        n: coeffs.order(),
        p: e.p_nu,
        q: Some(e.q_nu),
        psi_re: Some(e.psi.re),
        psi_im: Some(e.psi.im),
        alpha_prime: Some(e.alpha_prime),
        method: Method::Asymptotic,
        bound: None,
    })
}

pub fn eval(nu: f64, theta: f64, terms: Option<usize>, method: Method) -> CliResult<EvalRecord> {
    let n = terms.unwrap_or(method.default_terms());
    match method {
        Method::Asymptotic => {
            // Validate the point before paying for coefficients.
            EvaluationPoint::new(nu, theta, n)?;
            eval_with(nu, theta, &coefficients(n, nu)?)
        }
        Method::Stieltjes => {
            let s = stieltjes_p(nu, theta, n)?;
            Ok(EvalRecord {
                nu,
                theta,
                n,
                p: s.value,
                q: None,
                psi_re: None,
                psi_im: None,
                alpha_prime: None,
                method,
                bound: Some(s.bound),
            })
        }
        Method::Oracle => {
            let spec = QuadratureSpec::default();
            let psi = psi_quadrature(nu, theta, &spec)?;
            let alpha = phase_derivative_quadrature(nu, theta, &spec)?;
            Ok(EvalRecord {
                nu,
                theta,
                n,
                p: psi.re,
                q: Some(-std::f64::consts::FRAC_PI_2 * psi.im),
                psi_re: Some(psi.re),
                psi_im: Some(psi.im),
                alpha_prime: Some(alpha),
                method,
                bound: None,
            })
        }
    }
}

fn source_name(set: &CoefficientSet) -> &'static str {
    match set.source() {
        CoefficientSource::ClosedForm => "closed_form",
        CoefficientSource::Solved => "solved",
    }
}

/// `coeffs --format json`: the whole set as one object.
pub fn coefficient_json(set: &CoefficientSet) -> CliResult<String> {
    let residual = set
        .moment_residuals()
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()));
    let value = json!({
        "nu": set.nu(),
        "N": set.order(),
        "p": set.p(),
        "q": set.q(),
        "a0": set.a0(),
        "a": set.a(),
        "b": set.b(),
        "source": source_name(set),
        "max_moment_residual": residual,
    });
    let n = set.order() as isize;
    if !residual.is_finite() || (-n..=n).any(|j| !set.weight(j).is_finite()) {
        return Err(CliError::Numerical("non-finite coefficient".into()));
    }
    Ok(format!("{value}\n"))
}

/// `coeffs` output: one row per node, `j` running over `-N..=N`.
pub fn coefficient_table(set: &CoefficientSet) -> Table {
    let source = source_name(set);
    let mut t = Table::new(["nu", "N", "j", "node", "weight", "source"]);
    let n = set.order() as isize;
    for j in -n..=n {
        t.push(vec![
            set.nu().into(),
            set.order().into(),
            j.into(),
            (set.p() + j as f64 * set.q()).into(),
            set.weight(j).into(),
            source.into(),
        ]);
    }
    t
}
