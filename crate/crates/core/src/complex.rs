//! Complex literals of the form `a+bi` used by descriptor and Satake files.

use num_complex::Complex64;

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (whitespace ignored).
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(&s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() { 0.0 } else { parse_real(re_part)? };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other)?,
    };
    Some(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    // reject `inf`/`nan` spellings that f64::from_str accepts
    if s.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Render with enough digits to round-trip.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_forms() {
        let c = |re, im| Some(Complex64::new(re, im));
        assert_eq!(parse_complex("1"), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5"), c(-2.5, 0.0));
        assert_eq!(parse_complex("3i"), c(0.0, 3.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("1+2i"), c(1.0, 2.0));
        assert_eq!(parse_complex("1 - 2.5i"), c(1.0, -2.5));
        assert_eq!(parse_complex("1e-3+2e2i"), c(1e-3, 200.0));
        assert_eq!(parse_complex("-1e+2-i"), c(-100.0, -1.0));
        assert_eq!(parse_complex("0.5+i"), c(0.5, 1.0));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1+", "i1", "1+2j", "nan", "inf", "1++2i"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)), Some(z));
        }
    }
}
