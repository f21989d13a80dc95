use legendre_phase::coeffs::coefficients;
use legendre_phase::{closed_form, solve, CoefficientSource, Error};

const DEGREES: [f64; 4] = [1e2, 1e3, 1e3 * std::f64::consts::PI, 1e6];

#[test]
fn closed_forms_satisfy_moment_identities() {
    for n in 2..=6 {
        for &nu in &DEGREES {
            let c = closed_form(n, nu).unwrap();
            assert_eq!(c.source(), CoefficientSource::ClosedForm);
            assert!((c.zeroth_moment() - 1.0).abs() <= 1e-13, "N={n} nu={nu}");
            assert!(c.first_moment().abs() <= 1e-13, "N={n} nu={nu}");
        }
    }
}

#[test]
fn closed_forms_match_the_numeric_solve() {
    for n in 2..=6 {
        for &nu in &DEGREES {
            let a = closed_form(n, nu).unwrap();
            let b = solve(n, nu).unwrap();
            for j in -(n as isize)..=n as isize {
                let (x, y) = (a.weight(j), b.weight(j));
                assert!(((x - y) / x).abs() <= 1e-9, "N={n} nu={nu} j={j}: {x} {y}");
            }
        }
    }
}

#[test]
fn large_degree_limit_of_order_two() {
    let c = closed_form(2, 1e14).unwrap();
    let limits = [(0, 0.5), (1, 1.0 / 6.0), (2, 1.0 / 12.0), (-1, 1.0 / 6.0), (-2, 1.0 / 12.0)];
    for (j, want) in limits {
        assert!((c.weight(j) - want).abs() < 1e-6);
    }
}

#[test]
fn moment_residuals_for_higher_orders() {
    for n in [6usize, 7, 8] {
        let c = solve(n, 1e6).unwrap();
        assert!(c.moment_residuals().iter().all(|&r| r <= 1e-10), "N={n}");
    }
}

#[test]
fn default_route_and_errors() {
    assert_eq!(coefficients(4, 500.0).unwrap().source(), CoefficientSource::ClosedForm);
    assert_eq!(coefficients(8, 500.0).unwrap().source(), CoefficientSource::Solved);
    assert_eq!(closed_form(7, 1e3), Err(Error::UnsupportedOrder(7)));
    assert!(closed_form(6, 35.0).unwrap_err().is_domain());
    assert!(solve(3, 8.0).unwrap_err().is_domain());
    assert_eq!(solve(0, 3.0).unwrap().a0(), 1.0);
}
