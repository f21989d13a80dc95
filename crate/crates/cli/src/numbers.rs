//! Parsing of degree lists and locale-free number formatting.

use std::f64::consts::PI;

use crate::error::{CliError, CliResult};

/// Parses a real number with an optional `pi` factor: `1000`, `1e3`,
/// `1e3pi`, `100*pi`, `pi`.
pub fn parse_real(text: &str) -> CliResult<f64> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    let (mantissa, factor) = match lower.strip_suffix("pi") {
        Some(rest) => (rest.trim_end_matches('*').trim(), PI),
        None => (lower.as_str(), 1.0),
    };
    let value = if mantissa.is_empty() {
        1.0
    } else {
        mantissa
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number: {text:?}")))?
    };
    let v = value * factor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("not a finite number: {text:?}")))
    }
}

/// Comma-separated list of [`parse_real`] values.
pub fn parse_real_list(text: &str) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_real)
        .collect::<CliResult<Vec<_>>>()?;
    if values.is_empty() {
        return Err(CliError::Usage("empty list".into()));
    }
    Ok(values)
}

/// Comma-separated list of orders, with `a..b` / `a..=b` ranges.
pub fn parse_order_list(text: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Usage(format!("bad order list: {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let (b, inclusive) = match b.strip_prefix('=') {
                Some(b) => (b, true),
                None => (b, false),
            };
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            let end = if inclusive { b + 1 } else { b };
            if end <= a {
                return Err(bad());
            }
            out.extend(a..end);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Shortest round-trip scientific notation with a lowercase `e`.
pub fn sci(x: f64) -> String {
    format!("{x:e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_with_pi() {
        assert_eq!(parse_real("1e3").unwrap(), 1000.0);
        assert_eq!(parse_real("1e3pi").unwrap(), 1000.0 * PI);
        assert_eq!(parse_real("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert!(parse_real("abc").is_err());
        assert!(parse_real("1e999").is_err());
        assert_eq!(parse_real_list("1e2, 1e2pi").unwrap(), vec![100.0, 100.0 * PI]);
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order_list("2..=4,6").unwrap(), vec![2, 3, 4, 6]);
        assert_eq!(parse_order_list("3..5").unwrap(), vec![3, 4]);
        assert!(parse_order_list("5..2").is_err());
        assert!(parse_order_list("").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(sci(1.5e-6), "1.5e-6");
        assert_eq!(sci(0.0), "0e0");
    }
}
