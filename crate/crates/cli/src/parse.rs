//! Complex literals of the form `RE+IMi`, `RE-IMi`, `IMi` or a bare real.

use jratio_core::ComplexPoint;

fn parse_real(s: &str, whole: &str) -> Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("cannot parse `{whole}` as a complex number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{whole}` is not finite"))
    }
}

fn parse_imaginary(s: &str, whole: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

/// Position of the sign separating the real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

pub fn parse_complex(input: &str) -> Result<ComplexPoint, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(ComplexPoint::real(parse_real(&s, input)?));
    };
    match split_point(body) {
        Some(at) => {
            let re = parse_real(&body[..at], input)?;
            let im = parse_imaginary(&body[at..], input)?;
            Ok(ComplexPoint::new(re, im))
        }
        None => Ok(ComplexPoint::new(0.0, parse_imaginary(body, input)?)),
    }
}
