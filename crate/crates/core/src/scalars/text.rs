//! Text forms of scalars.
//!
//! Integers and `p/q` parse to exact rationals; anything with a decimal point
//! or exponent parses to a float at the requested precision. Output uses a
//! normalized scientific form with a fixed number of significant digits,
//! e.g. `3.099986240e-1`.

use rug::{Float, Integer, Rational};

use super::scalar::Scalar;
use crate::error::{Error, Result};

fn parse_err(text: &str, reason: &str) -> Error {
    Error::Parse { text: text.to_string(), reason: reason.to_string() }
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_integer(text: &str, s: &str) -> Result<Integer> {
    if !is_integer_literal(s) {
        return Err(parse_err(text, "expected an integer"));
    }
    let digits = s.strip_prefix('+').unwrap_or(s);
    Integer::from_str_radix(digits, 10).map_err(|e| parse_err(text, &e.to_string()))
}

fn is_decimal_literal(s: &str) -> bool {
    let s = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let mut parts = mantissa.splitn(2, '.');
    let int_part = parts.next().unwrap_or("");
    let frac_part = parts.next().unwrap_or("");
    let mantissa_ok = (!int_part.is_empty() || !frac_part.is_empty())
        && int_part.bytes().all(|b| b.is_ascii_digit())
        && frac_part.bytes().all(|b| b.is_ascii_digit());
    let exponent_ok = exponent.map_or(true, is_integer_literal);
    mantissa_ok && exponent_ok
}

/// Parses `p/q`, an integer, or a decimal/scientific literal.
pub fn parse_scalar(text: &str, precision: u32) -> Result<Scalar> {
    let s = text.trim();
    if s.is_empty() {
        return Err(parse_err(text, "empty input"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(text, num.trim())?;
        let den = parse_integer(text, den.trim())?;
        if den == 0 {
            return Err(parse_err(text, "zero denominator"));
        }
        return Ok(Scalar::Exact(Rational::from((num, den))));
    }
    if is_integer_literal(s) {
        return Ok(Scalar::Exact(Rational::from(parse_integer(text, s)?)));
    }
    if !is_decimal_literal(s) {
        return Err(parse_err(text, "not a number"));
    }
    let parsed = Float::parse(s).map_err(|e| parse_err(text, &e.to_string()))?;
    Ok(Scalar::Float(Float::with_val(precision, parsed)))
}

/// Scientific notation with `sigfigs` significant digits; zero prints as `0`.
pub fn print_scalar(x: &Scalar, sigfigs: usize) -> String {
    let sigfigs = sigfigs.max(1);
    let float = match x {
        // Enough bits that decimal rounding of the converted value is the
        // rounding of the exact rational.
        Scalar::Exact(r) => Float::with_val(64 + 4 * sigfigs as u32 + 64, r),
        Scalar::Float(f) => f.clone(),
    };
    if float.is_zero() {
        return "0".to_string();
    }
    if float.is_nan() {
        return "NaN".to_string();
    }
    if float.is_infinite() {
        return if float.is_sign_negative() { "-inf" } else { "inf" }.to_string();
    }
    let (negative, digits, exp) = float.to_sign_string_exp(10, Some(sigfigs));
    let exp = exp.unwrap_or(0) - 1;
    let mut out = String::with_capacity(sigfigs + 8);
    if negative {
        out.push('-');
    }
    out.push_str(&digits[..1]);
    if digits.len() > 1 {
        out.push('.');
        out.push_str(&digits[1..]);
    }
    out.push('e');
    out.push_str(&exp.to_string());
    out
}
