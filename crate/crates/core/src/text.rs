//! Small text codecs shared by the CLI, config files and matrix files.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Formats `z` as `re+imj` (or `re-imj`), round-trippable through [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", format_real(z.re), sign, format_real(z.im.abs()))
}

fn parse_real(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Parse(format!("`{s}` is not a real number")))
}

/// Parses `a`, `bj`, `a+bj`, `a-bj` (also with `i` instead of `j`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    };
    // Split at the last sign that is not an exponent sign and not leading.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => parse_real(t)?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses a comma separated list, allowing `a..b` and `a..b:step` ranges.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, rest)) = tok.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, st)) => (b, st),
                None => (rest, "1"),
            };
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("`{t}` is not a count in `{tok}`")))
            };
            let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
            if step == 0 || b < a || (b - a) / step > 1_000_000 {
                return Err(Error::Parse(format!("bad range `{tok}`")));
            }
            out.extend((a..=b).step_by(step));
        } else {
            out.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not a count")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(out)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_real)
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("2j").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-j").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-2.5e+2j").unwrap(), Complex64::new(1e-3, -250.0));
        assert_eq!(parse_complex("0.5+0j").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_usize_list("1,10,100").unwrap(), vec![1, 10, 100]);
        assert_eq!(parse_usize_list("10..30:10").unwrap(), vec![10, 20, 30]);
        assert!(parse_usize_list("5..1").is_err());
        assert!(parse_usize_list("").is_err());
    }

    proptest! {
        #[test]
        fn complex_roundtrip(re in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                             im in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let z = Complex64::new(re, im);
            let back = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
            prop_assert_eq!(back.im.abs().to_bits(), z.im.abs().to_bits());
        }
    }
}
