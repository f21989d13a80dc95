//! Scaled Hankel values against frozen 40-digit references (computed from
//! `K0`, `K1` of argument `-iz` to avoid cancellation in the reference).

#![allow(clippy::excessive_precision)]

use legendre_phase::hankel::{
    bessel_j0y0, cylinder_real, scaled_hankel, scaled_hankel_with, Regime, SectorArgument,
};
use legendre_phase::{s_prime, scaled_h0, scaled_h1, Complex64};

type Row = (f64, f64, [f64; 2], [f64; 2]);

const REFERENCE: [Row; 16] = [
    (1e-3, 0.0, [0.99552783413404243, -4.4724143752511373], [-0.63612206143995014, -636.62184942008218]),
    (0.5, 0.5, [0.27408036700570431, -0.81109815703011785], [-1.0777280649142711, -0.70635735208589702]),
    (1.9, 0.3, [0.34180455657868365, -0.44804273603257285], [-0.39399410921327133, -0.47029650117054051]),
    (0.1, 1.95, [0.012635227072220485, -0.54152741975160125], [-0.66752366123055804, -0.021581442374375282]),
    (2.5, 0.0, [0.33684358964710329, -0.37006954625613935], [-0.3109158256226472, -0.414398357947813]),
    (0.0, 3.0, [0.0, -0.44420882971351671], [-0.51347425911959254, 0.0]),
    (7.0, 7.0, [0.094246756736265641, -0.2330075821607936], [-0.23805799411178635, -0.10565099964726444]),
    (13.0, 2.0, [0.14144700102431362, -0.16799573325870908], [-0.16380032909375829, -0.1486259503089658]),
    (0.5, 17.0, [0.0027847694444845892, -0.19207636139328606], [-0.1976400425920894, -0.0030269850697311105]),
    (19.9, 0.1, [0.12533296368543697, -0.12755438902529489], [-0.12446394234611024, -0.12859055744075816]),
    (20.0, 0.0, [0.12534720475766606, -0.1269218701649168], [-0.12382964316141508, -0.12855730415075281]),
    (0.0, 25.0, [0.0, -0.15879627442505876], [-0.16194163762855554, 0.0]),
    (30.0, 40.0, [0.035453666640448473, -0.10688679512805779], [-0.10752930532221096, -0.036373076481275884]),
    (1e3, 1e3, [0.0081176360628637985, -0.01960117028626172], [-0.019604041676304567, -0.0081245645397371924]),
    (0.0, 1e6, [0.0, -0.00079788446106735136], [-0.00079788486000948215, 0.0]),
    (1e9, 3e8, [1.474033073562079e-5, -1.9811456317689817e-5], [-1.9811456313654545e-5, -1.47403307467371e-5]),
];

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn matches_frozen_reference_values() {
    for &(re, im, s0, s1) in &REFERENCE {
        let z = SectorArgument::new(Complex64::new(re, im)).unwrap();
        let got = scaled_hankel(z).unwrap();
        let e0 = rel(got.h0, Complex64::new(s0[0], s0[1]));
        let e1 = rel(got.h1, Complex64::new(s1[0], s1[1]));
        assert!(e0 <= 2e-14 && e1 <= 2e-14, "z = {re}+{im}i: {e0:e} {e1:e}");
    }
}

#[test]
fn large_real_argument_follows_hankel_expansion() {
    // Leading corrections: 1 - i/(8x) and 1 + 3i/(8x).
    let x = 1e4;
    let z = SectorArgument::real(x).unwrap();
    let lead = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let s0 = scaled_h0(z).unwrap() / (lead * Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4));
    let s1 = scaled_h1(z).unwrap() / (lead * Complex64::from_polar(1.0, -3.0 * std::f64::consts::FRAC_PI_4));
    assert!((s0 - Complex64::new(1.0, -1.0 / (8.0 * x))).norm() < 1e-8);
    assert!((s1 - Complex64::new(1.0, 3.0 / (8.0 * x))).norm() < 1e-8);
}

#[test]
fn magnitude_scaling_in_the_sector() {
    for &r in &[10.0, 15.0, 50.0, 1e3, 1e6, 1e9, 1e12] {
        for k in 0..=16 {
            let angle = std::f64::consts::FRAC_PI_2 * k as f64 / 16.0;
            let z = SectorArgument::polar(r, angle).unwrap();
            let h = scaled_hankel(z).unwrap();
            let scaled = h.h0.norm() * r.sqrt();
            assert!((0.5..=1.0).contains(&scaled), "r={r} angle={angle}: {scaled}");
            assert!(h.h1.re.is_finite() && h.h1.im.is_finite());
            assert!(s_prime(z).unwrap().norm().is_finite());
        }
    }
}

#[test]
fn central_difference_of_s_at_ten() {
    let h = 1e-5;
    let at = |x: f64| scaled_h0(SectorArgument::real(x).unwrap()).unwrap();
    let fd = (at(10.0 + h) - at(10.0 - h)) / (2.0 * h);
    let exact = s_prime(SectorArgument::real(10.0).unwrap()).unwrap();
    assert!(rel(fd, exact) <= 1e-8);
}

#[test]
fn series_and_integral_representation_agree() {
    // S(z) = -(2i/π) ∫_0^∞ exp(-z x)/sqrt(x^2 - 2ix) dx for real z, with
    // x = u^2 removing the endpoint singularity.
    use legendre_phase::quadrature::integrate;
    use legendre_phase::QuadratureSpec;
    for &x in &[0.7, 3.0, 12.0, 40.0] {
        let f = |u: f64| {
            let u2 = u * u;
            let root = Complex64::new(u2, -2.0).sqrt();
            Complex64::new(2.0 * (-x * u2).exp(), 0.0) / root
        };
        let upper = (40.0 / x).sqrt();
        let mut breaks = vec![0.0];
        let mut b = 0.05;
        while b < upper {
            breaks.push(b);
            b *= 2.0;
        }
        breaks.push(upper);
        let integral = integrate(f, &breaks, &QuadratureSpec::default()).unwrap().value;
        let expected = Complex64::new(0.0, -2.0 / std::f64::consts::PI) * integral;
        let got = scaled_h0(SectorArgument::real(x).unwrap()).unwrap();
        assert!(rel(got, expected) <= 1e-12, "x={x}: {:e}", rel(got, expected));
    }
}

#[test]
fn wronskian_and_regime_overlap() {
    for &x in &[0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        let c = cylinder_real(x).unwrap();
        let w = c.j1 * c.y0 - c.j0 * c.y1;
        let expected = 2.0 / (std::f64::consts::PI * x);
        assert!(((w - expected) / expected).abs() <= 1e-13, "x={x}");
    }
    for &(r, a, b) in &[
        (2.0, Regime::Series, Regime::ContinuedFraction),
        (20.0, Regime::ContinuedFraction, Regime::Asymptotic),
    ] {
        for k in 0..16 {
            let angle = std::f64::consts::FRAC_PI_2 * (k as f64 + 0.5) / 16.0;
            let z = SectorArgument::polar(r, angle).unwrap();
            let x = scaled_hankel_with(z, a).unwrap();
            let y = scaled_hankel_with(z, b).unwrap();
            assert!(rel(x.h0, y.h0) <= 1e-12 && rel(x.h1, y.h1) <= 1e-12);
        }
    }
}

#[test]
fn zero_and_outside_sector_are_rejected() {
    assert!(SectorArgument::new(Complex64::new(0.0, 0.0)).is_err());
    assert!(SectorArgument::new(Complex64::new(-1.0, 0.5)).is_err());
    assert!(SectorArgument::new(Complex64::new(1.0, -0.5)).is_err());
    assert!(bessel_j0y0(SectorArgument::real(15.0).unwrap()).is_err());
}
