//! Globally adaptive 21-point Gauss–Kronrod quadrature for complex-valued
//! integrands on a finite interval.

// Nodes and weights are tabulated to 33 digits; the extra digits are harmless.
#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

const KRONROD_NODES: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_386_324_000,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances and budget for the adaptive scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive"));
        }
        if max_subdivisions == 0 {
            return Err(Error::Domain("quadrature needs at least one subdivision"));
        }
        Ok(QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    /// Same budget with the relative tolerance replaced.
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadratureSpec { rel_tol, ..self }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-16,
            rel_tol: 1e-13,
            max_subdivisions: 4000,
        }
    }
}

/// Result of [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * KRONROD_WEIGHTS[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for i in 0..10 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Panel { a, b, value, error }
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per breakpoint interval and bisecting the panel with the
/// largest error estimate until the summed estimate meets
/// `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("breakpoints must be strictly increasing"));
    }
    let mut panels: Vec<Panel> = breakpoints
        .windows(2)
        .map(|w| kronrod(&f, w[0], w[1]))
        .collect();
    let mut evaluations = 21 * panels.len();
    let mut subdivisions = 0;
    loop {
        let value: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !(value.re.is_finite() && value.im.is_finite() && error.is_finite()) {
            return Err(Error::Numerical("integrand produced non-finite values"));
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.norm()) {
            return Ok(Estimate {
                value,
                error,
                evaluations,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NoConvergence("quadrature subdivision budget exhausted"));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.error > best.1 { (i, p.error) } else { best });
        let panel = panels.swap_remove(worst);
        let mid = 0.5 * (panel.a + panel.b);
        if !(panel.a < mid && mid < panel.b) {
            return Err(Error::NoConvergence("quadrature panel cannot be bisected further"));
        }
        panels.push(kronrod(&f, panel.a, mid));
        panels.push(kronrod(&f, mid, panel.b));
        evaluations += 42;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let est = integrate(
            |x| Complex64::new(x * x * x, 1.0),
            &[0.0, 2.0],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((est.value.re - 4.0).abs() < 1e-15);
        assert!((est.value.im - 2.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_peak_needs_subdivision() {
        // ∫_0^1 1/sqrt(x + 1e-8) dx = 2(sqrt(1 + 1e-8) - 1e-4)
        let est = integrate(
            |x| Complex64::new(1.0 / libm::sqrt(x + 1e-8), 0.0),
            &[0.0, 1.0],
            &QuadratureSpec::default(),
        )
        .unwrap();
        let exact = 2.0 * (libm::sqrt(1.0 + 1e-8) - 1e-4);
        assert!((est.value.re - exact).abs() < 1e-13 * exact);
        assert!(est.evaluations > 21);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = QuadratureSpec::new(1e-300, 1e-300, 3).unwrap();
        let err = integrate(|x| Complex64::new(libm::sin(1.0 / (x + 1e-3)), 0.0), &[0.0, 1.0], &spec);
        assert!(matches!(err, Err(Error::NoConvergence(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0).is_err());
        assert!(integrate(|_| Complex64::new(1.0, 0.0), &[1.0, 1.0], &QuadratureSpec::default()).is_err());
    }
}
