//! Coefficients of the exponential sum
//!
//! ```text
//! g(t) = a0 exp(-p t) + Σ_{k=1..N} a_k exp(-(p + k q) t) + b_k exp(-(p - k q) t)
//! ```
//!
//! that matches `(1 + t)^(-p)` to order `2N` at `t = 0`, with `p = nu + 1` and
//! `q = sqrt(p)`.
//!
//! Two independent routes are provided: hardcoded rational functions of `q`
//! for `N = 2..=6` ([`closed_form`]), and a numeric solve of the moment
//! system for any `N` ([`solve`]).

use alloc::vec;
use alloc::vec::Vec;

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

/// Which route produced a [`CoefficientSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    ClosedForm,
    Solved,
}

/// Weights of the exponential sum for one `(nu, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    order: usize,
    nu: f64,
    p: f64,
    q: f64,
    a0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    source: CoefficientSource,
}

impl CoefficientSet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `nu + 1`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// `sqrt(nu + 1)`.
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// `a_1 ..= a_N`, weights of the nodes `p + k q`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_1 ..= b_N`, weights of the nodes `p - k q`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn source(&self) -> CoefficientSource {
        self.source
    }

    /// `(weight, node)` pairs in node order `p - N q, ..., p, ..., p + N q`.
    pub fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.order as isize;
        (-n..=n).map(move |j| (self.weight(j), self.p + j as f64 * self.q))
    }

    /// Weight of the node `p + j q`, `-N <= j <= N`.
    pub fn weight(&self, j: isize) -> f64 {
        match j {
            0 => self.a0,
            j if j > 0 => self.a[j as usize - 1],
            j => self.b[(-j) as usize - 1],
        }
    }

    /// `a0 + Σ (a_k + b_k)`; equals 1 for a valid set.
    pub fn zeroth_moment(&self) -> f64 {
        self.a0 + self.a.iter().sum::<f64>() + self.b.iter().sum::<f64>()
    }

    /// `Σ k (a_k - b_k)`; equals 0 for a valid set.
    pub fn first_moment(&self) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .map(|(k, (a, b))| (k + 1) as f64 * (a - b))
            .sum()
    }

    /// Relative residuals `|Σ c_j λ_j^k - (p)_k| / (p)_k` for `k = 0..=2N`,
    /// evaluated on the row-scaled form `Σ c_j (λ_j/p)^k` against
    /// `Π_{i<k} (1 + i/p)` so nothing overflows.
    pub fn moment_residuals(&self) -> Vec<f64> {
        let rows = 2 * self.order + 1;
        let mut out = Vec::with_capacity(rows);
        let mut rising = 1.0;
        for k in 0..rows {
            let lhs: f64 = self
                .terms()
                .map(|(c, node)| c * libm::pow(node / self.p, k as f64))
                .sum();
            out.push(libm::fabs(lhs - rising) / rising);
            rising *= 1.0 + k as f64 / self.p;
        }
        out
    }
}

fn validate(n: usize, nu: f64) -> Result<(f64, f64)> {
    if !nu.is_finite() || nu <= -1.0 {
        return Err(Error::Domain("degree must be finite and greater than -1"));
    }
    let p = nu + 1.0;
    let q = libm::sqrt(p);
    if q <= n as f64 {
        return Err(Error::Domain("expansion requires nu + 1 > N^2"));
    }
    Ok((p, q))
}

struct RationalForm {
    sign: f64,
    denominator: f64,
    numerator: &'static [f64],
}

impl RationalForm {
    fn eval(&self, q: f64, q_power: f64) -> f64 {
        let num = self.numerator.iter().fold(0.0, |acc, &c| acc * q + c);
        self.sign * num / (self.denominator * q_power)
    }
}

// Each entry is (sign, denominator, numerator coefficients from q^(2N-2) down to q^0);
// the coefficient equals sign * numerator(q) / (denominator * q^(2N-2)).
const ORDER_2: [RationalForm; 5] = [
    // a0
    RationalForm { sign: 1.0, denominator: 2.0, numerator: &[1.0, 0.0, 3.0] },
    // a1
    RationalForm { sign: 1.0, denominator: 6.0, numerator: &[1.0, -2.0, -6.0] },
    // a2
    RationalForm { sign: 1.0, denominator: 12.0, numerator: &[1.0, 2.0, 3.0] },
    // b1
    RationalForm { sign: 1.0, denominator: 6.0, numerator: &[1.0, 2.0, -6.0] },
    // b2
    RationalForm { sign: 1.0, denominator: 12.0, numerator: &[1.0, -2.0, 3.0] },
];

const ORDER_3: [RationalForm; 7] = [
    // a0
    RationalForm { sign: -1.0, denominator: 18.0, numerator: &[-7.0, 0.0, 23.0, 0.0, 60.0] },
    // a1
    RationalForm { sign: 1.0, denominator: 24.0, numerator: &[6.0, -3.0, 26.0, 12.0, 60.0] },
    // a2
    RationalForm { sign: -1.0, denominator: 60.0, numerator: &[-3.0, 0.0, 35.0, 24.0, 60.0] },
    // a3
    RationalForm { sign: 1.0, denominator: 360.0, numerator: &[2.0, 15.0, 50.0, 36.0, 60.0] },
    // b1
    RationalForm { sign: 1.0, denominator: 24.0, numerator: &[6.0, 3.0, 26.0, -12.0, 60.0] },
    // b2
    RationalForm { sign: 1.0, denominator: 60.0, numerator: &[3.0, 0.0, -35.0, 24.0, -60.0] },
    // b3
    RationalForm { sign: 1.0, denominator: 360.0, numerator: &[2.0, -15.0, 50.0, -36.0, 60.0] },
];

const ORDER_4: [RationalForm; 9] = [
    // a0
    RationalForm { sign: 1.0, denominator: 288.0, numerator: &[115.0, 0.0, 59.0, 0.0, 1854.0, 0.0, 2520.0] },
    // a1
    RationalForm { sign: -1.0, denominator: 360.0, numerator: &[-87.0, 59.0, 37.0, 114.0, 1914.0, 360.0, 2520.0] },
    // a2
    RationalForm { sign: 1.0, denominator: 720.0, numerator: &[39.0, 28.0, 7.0, 300.0, 2094.0, 720.0, 2520.0] },
    // a3
    RationalForm { sign: -1.0, denominator: 2520.0, numerator: &[-11.0, -63.0, 77.0, 630.0, 2394.0, 1080.0, 2520.0] },
    // a4
    RationalForm { sign: 1.0, denominator: 20160.0, numerator: &[3.0, 56.0, 427.0, 1176.0, 2814.0, 1440.0, 2520.0] },
    // b1
    RationalForm { sign: 1.0, denominator: 360.0, numerator: &[87.0, 59.0, -37.0, 114.0, -1914.0, 360.0, -2520.0] },
    // b2
    RationalForm { sign: 1.0, denominator: 720.0, numerator: &[39.0, -28.0, 7.0, -300.0, 2094.0, -720.0, 2520.0] },
    // b3
    RationalForm { sign: -1.0, denominator: 2520.0, numerator: &[-11.0, 63.0, 77.0, -630.0, 2394.0, -1080.0, 2520.0] },
    // b4
    RationalForm { sign: 1.0, denominator: 20160.0, numerator: &[3.0, -56.0, 427.0, -1176.0, 2814.0, -1440.0, 2520.0] },
];

const ORDER_5: [RationalForm; 11] = [
    // a0
    RationalForm { sign: -1.0, denominator: 900.0, numerator: &[-359.0, 0.0, 20.0, 0.0, 1530.0, 0.0, 21636.0, 0.0, 22680.0] },
    // a1
    RationalForm { sign: 1.0, denominator: 8640.0, numerator: &[2091.0, -1396.0, 747.0, -104.0, 12654.0, 12672.0, 175608.0, 20160.0, 181440.0] },
    // a2
    RationalForm { sign: -1.0, denominator: 3780.0, numerator: &[-204.0, -137.0, 372.0, -259.0, 3654.0, 6876.0, 45792.0, 10080.0, 45360.0] },
    // a3
    RationalForm { sign: 1.0, denominator: 40320.0, numerator: &[179.0, 1068.0, 403.0, -2184.0, 20286.0, 46656.0, 195768.0, 60480.0, 181440.0] },
    // a4
    RationalForm { sign: -1.0, denominator: 22680.0, numerator: &[-3.0, -53.0, -276.0, -7.0, 4158.0, 9036.0, 26676.0, 10080.0, 22680.0] },
    // a5
    RationalForm { sign: 1.0, denominator: 1814400.0, numerator: &[3.0, 100.0, 1635.0, 13160.0, 58590.0, 106560.0, 236088.0, 100800.0, 181440.0] },
    // b1
    RationalForm { sign: 1.0, denominator: 8640.0, numerator: &[2091.0, 1396.0, 747.0, 104.0, 12654.0, -12672.0, 175608.0, -20160.0, 181440.0] },
    // b2
    RationalForm { sign: -1.0, denominator: 3780.0, numerator: &[-204.0, 137.0, 372.0, 259.0, 3654.0, -6876.0, 45792.0, -10080.0, 45360.0] },
    // b3
    RationalForm { sign: 1.0, denominator: 40320.0, numerator: &[179.0, -1068.0, 403.0, 2184.0, 20286.0, -46656.0, 195768.0, -60480.0, 181440.0] },
    // b4
    RationalForm { sign: -1.0, denominator: 22680.0, numerator: &[-3.0, 53.0, -276.0, 7.0, 4158.0, -9036.0, 26676.0, -10080.0, 22680.0] },
    // b5
    RationalForm { sign: 1.0, denominator: 1814400.0, numerator: &[3.0, -100.0, 1635.0, -13160.0, 58590.0, -106560.0, 236088.0, -100800.0, 181440.0] },
];

const ORDER_6: [RationalForm; 13] = [
    // a0
    RationalForm { sign: 1.0, denominator: 129600.0, numerator: &[51693.0, 0.0, -856.0, 0.0, 18721.0, 0.0, 1433070.0, 0.0, 10994040.0, 0.0, 9979200.0] },
    // a1
    RationalForm { sign: -1.0, denominator: 302400.0, numerator: &[-73191.0, 48926.0, -22097.0, 10306.0, 35192.0, -1980.0, 2951028.0, 1504080.0, 22169520.0, 1814400.0, 19958400.0] },
    // a2
    RationalForm { sign: 1.0, denominator: 241920.0, numerator: &[13053.0, 8834.0, -21784.0, 23242.0, 5185.0, 1476.0, 1617966.0, 1564560.0, 11356920.0, 1814400.0, 9979200.0] },
    // a3
    RationalForm { sign: -1.0, denominator: 1088640.0, numerator: &[-4839.0, -28638.0, -6833.0, 78966.0, -69640.0, 64908.0, 3811572.0, 4996080.0, 23621040.0, 5443200.0, 19958400.0] },
    // a4
    RationalForm { sign: 1.0, denominator: 1814400.0, numerator: &[237.0, 4372.0, 24104.0, 13892.0, -93599.0, 160200.0, 2414574.0, 3612960.0, 12445560.0, 3628800.0, 9979200.0] },
    // a5
    RationalForm { sign: -1.0, denominator: 19958400.0, numerator: &[-39.0, -770.0, -13937.0, -111430.0, -166408.0, 1035540.0, 6500340.0, 9939600.0, 26524080.0, 9072000.0, 19958400.0] },
    // a6
    RationalForm { sign: 1.0, denominator: 119750400.0, numerator: &[-3.0, 198.0, 2024.0, 19998.0, 239041.0, 1324620.0, 4548654.0, 6629040.0, 14259960.0, 5443200.0, 9979200.0] },
    // b1
    RationalForm { sign: 1.0, denominator: 302400.0, numerator: &[73191.0, 48926.0, 22097.0, 10306.0, -35192.0, -1980.0, -2951028.0, 1504080.0, -22169520.0, 1814400.0, -19958400.0] },
    // b2
    RationalForm { sign: 1.0, denominator: 241920.0, numerator: &[13053.0, -8834.0, -21784.0, -23242.0, 5185.0, -1476.0, 1617966.0, -1564560.0, 11356920.0, -1814400.0, 9979200.0] },
    // b3
    RationalForm { sign: 1.0, denominator: 1088640.0, numerator: &[4839.0, -28638.0, 6833.0, 78966.0, 69640.0, 64908.0, -3811572.0, 4996080.0, -23621040.0, 5443200.0, -19958400.0] },
    // b4
    RationalForm { sign: 1.0, denominator: 1814400.0, numerator: &[237.0, -4372.0, 24104.0, -13892.0, -93599.0, -160200.0, 2414574.0, -3612960.0, 12445560.0, -3628800.0, 9979200.0] },
    // b5
    RationalForm { sign: 1.0, denominator: 19958400.0, numerator: &[39.0, -770.0, 13937.0, -111430.0, 166408.0, 1035540.0, -6500340.0, 9939600.0, -26524080.0, 9072000.0, -19958400.0] },
    // b6
    RationalForm { sign: 1.0, denominator: 119750400.0, numerator: &[-3.0, -198.0, 2024.0, -19998.0, 239041.0, -1324620.0, 4548654.0, -6629040.0, 14259960.0, -5443200.0, 9979200.0] },
];

/// Closed-form coefficients for `2 <= n <= 6`.
pub fn closed_form(n: usize, nu: f64) -> Result<CoefficientSet> {
    let table: &[RationalForm] = match n {
        2 => &ORDER_2,
        3 => &ORDER_3,
        4 => &ORDER_4,
        5 => &ORDER_5,
        6 => &ORDER_6,
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    let (p, q) = validate(n, nu)?;
    let q_power = libm::pow(q, (2 * n - 2) as f64);
    let values: Vec<f64> = table.iter().map(|form| form.eval(q, q_power)).collect();
    Ok(CoefficientSet {
        order: n,
        nu,
        p,
        q,
        a0: values[0],
        a: values[1..=n].to_vec(),
        b: values[n + 1..].to_vec(),
        source: CoefficientSource::ClosedForm,
    })
}

/// Moments `E[Z^k]`, `k = 0..count`, of the standardized gamma variable
/// `Z = (X - p)/q`, `X ~ Gamma(p, 1)`.
///
/// The moment system `Σ c_j (p + j q)^k = (p)_k` is a statement about the
/// gamma distribution, whose raw moments are the rising factorials `(p)_k`.
/// Shifting by the mean and scaling by the standard deviation turns it into
/// `Σ c_j j^k = E[Z^k]` on the integer nodes `j = -N..=N`. The standardized
/// cumulants are `κ_1 = 0`, `κ_m = (m-1)! q^(2-m)`, all nonnegative, so the
/// cumulant-to-moment recursion involves no cancellation.
pub fn standardized_gamma_moments(q: f64, count: usize) -> Vec<f64> {
    let mut cumulants = vec![0.0; count.max(1)];
    let mut factorial = 1.0;
    for m in 2..count {
        factorial *= (m - 1) as f64;
        cumulants[m] = factorial * libm::pow(q, 2.0 - m as f64);
    }
    let mut moments = vec![0.0; count];
    if count == 0 {
        return moments;
    }
    moments[0] = 1.0;
    for k in 1..count {
        // m_k = Σ_{i=1..k} C(k-1, i-1) κ_i m_{k-i}
        let mut binom = 1.0;
        let mut acc = 0.0;
        for i in 1..=k {
            acc += binom * cumulants[i] * moments[k - i];
            binom = binom * (k - i) as f64 / i as f64;
        }
        moments[k] = acc;
    }
    moments
}

/// Solves the primal Vandermonde system `Σ_j x_j^k c_j = rhs_k`,
/// `k = 0..n`, in place by Björck–Pereyra elimination. Nodes must be
/// distinct.
pub fn vandermonde_primal_solve(nodes: &[f64], rhs: &mut [f64]) -> Result<()> {
    let n = nodes.len();
    if rhs.len() != n {
        return Err(Error::Domain("node and right-hand-side lengths differ"));
    }
    if n == 0 {
        return Ok(());
    }
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::Domain("Vandermonde nodes must be distinct"));
        }
    }
    let last = n - 1;
    for k in 0..last {
        for i in (k + 1..=last).rev() {
            rhs[i] -= nodes[k] * rhs[i - 1];
        }
    }
    for k in (0..last).rev() {
        for i in k + 1..=last {
            rhs[i] /= nodes[i] - nodes[i - k - 1];
        }
        for i in k..last {
            rhs[i] -= rhs[i + 1];
        }
    }
    if rhs.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numerical("Vandermonde solve produced non-finite values"))
    }
}

/// [`standardized_gamma_moments`] carried in double-double arithmetic.
fn standardized_gamma_moments_dd(q: f64, count: usize) -> Vec<DoubleDouble> {
    let inv_q = DoubleDouble::from_f64(1.0).div(DoubleDouble::from_f64(q));
    let mut cumulants = vec![DoubleDouble::ZERO; count.max(3)];
    // κ_2 = 1, κ_{m+1} = m κ_m / q
    cumulants[2] = DoubleDouble::from_f64(1.0);
    for m in 3..count {
        cumulants[m] = cumulants[m - 1].mul(inv_q).mul_f64((m - 1) as f64);
    }
    let mut moments = vec![DoubleDouble::ZERO; count];
    if count == 0 {
        return moments;
    }
    moments[0] = DoubleDouble::from_f64(1.0);
    for k in 1..count {
        let mut binom = 1.0;
        let mut acc = DoubleDouble::ZERO;
        for i in 1..=k {
            // Binomial coefficients up to C(24, 12) are exact in binary64.
            acc = acc.add(cumulants[i].mul(moments[k - i]).mul_f64(binom));
            binom = binom * (k - i) as f64 / i as f64;
        }
        moments[k] = acc;
    }
    moments
}

/// Björck–Pereyra on the integer nodes `-n..=n` in double-double
/// arithmetic. Node differences are small integers and therefore exact.
fn integer_vandermonde_solve_dd(n: usize, rhs: &mut [DoubleDouble]) {
    let last = 2 * n;
    let node = |i: usize| i as f64 - n as f64;
    for k in 0..last {
        for i in (k + 1..=last).rev() {
            rhs[i] = rhs[i].sub(rhs[i - 1].mul_f64(node(k)));
        }
    }
    for k in (0..last).rev() {
        for i in k + 1..=last {
            rhs[i] = rhs[i].div(DoubleDouble::from_f64((k + 1) as f64));
        }
        for i in k..last {
            rhs[i] = rhs[i].sub(rhs[i + 1]);
        }
    }
}

/// Solves the `(2n + 1)`-equation moment system for any order `n`.
///
/// Several weights are many orders of magnitude smaller than the largest,
/// so the moments and the elimination run in double-double arithmetic;
/// the weights are rounded to binary64 only at the end.
pub fn solve(n: usize, nu: f64) -> Result<CoefficientSet> {
    let (p, q) = validate(n, nu)?;
    let size = 2 * n + 1;
    let mut extended = standardized_gamma_moments_dd(q, size);
    integer_vandermonde_solve_dd(n, &mut extended);
    let weights: Vec<f64> = extended.iter().map(|w| w.to_f64()).collect();
    if !weights.iter().all(|w| w.is_finite()) {
        return Err(Error::Numerical("moment solve produced non-finite values"));
    }
    let a0 = weights[n];
    let a = weights[n + 1..].to_vec();
    let b = weights[..n].iter().rev().copied().collect();
    Ok(CoefficientSet {
        order: n,
        nu,
        p,
        q,
        a0,
        a,
        b,
        source: CoefficientSource::Solved,
    })
}

/// Closed forms where they exist, the solver otherwise.
pub fn coefficients(n: usize, nu: f64) -> Result<CoefficientSet> {
    match n {
        2..=6 => closed_form(n, nu),
        _ => solve(n, nu),
    }
}
