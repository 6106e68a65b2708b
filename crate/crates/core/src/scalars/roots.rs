//! Simultaneous root finding (Aberth–Ehrlich) at arbitrary precision.
//!
//! Used as an independent reference for root sums; nothing in the NRS
//! iteration depends on it.

use std::cmp::Ordering;

use rug::{Assign, Complex, Float};

use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Guard bits carried internally beyond the requested precision.
const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexRoot {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexRoot {
    pub fn modulus(&self) -> Float {
        let p = precision_of(&self.re);
        self.re.to_float(p).hypot(&self.im.to_float(p))
    }
}

fn precision_of(s: &Scalar) -> u32 {
    s.mode().precision().unwrap_or(64)
}

fn horner(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    let mut value = Complex::with_val(prec, 0);
    let mut deriv = Complex::with_val(prec, 0);
    for c in coeffs.iter().rev() {
        deriv *= z;
        deriv += &value;
        value *= z;
        value += c;
    }
    (value, deriv)
}

pub fn polynomial_roots(p: &Polynomial, precision: u32) -> Result<Vec<ComplexRoot>> {
    polynomial_roots_with(p, precision, DEFAULT_MAX_ITERATIONS)
}

/// All `d` roots, sorted by ascending modulus and then ascending argument.
///
/// Iterates until every Newton correction `|p(z)/p'(z)|` is below
/// `2^(-precision+16)`.
pub fn polynomial_roots_with(
    p: &Polynomial,
    precision: u32,
    max_iterations: usize,
) -> Result<Vec<ComplexRoot>> {
    let wp = precision + GUARD_BITS;
    let d = p.degree();
    let coeffs: Vec<Complex> =
        p.coeffs().iter().map(|c| Complex::with_val(wp, (c.to_float(wp), 0))).collect();
    let tol = Float::with_val(wp, Float::i_exp(1, 16 - precision as i32));

    // Starting points on a circle whose radius is the geometric mean of the
    // root moduli, rotated off the real axis.
    let lead = Float::with_val(wp, coeffs[d].abs_ref());
    let constant = Float::with_val(wp, coeffs[0].abs_ref());
    let radius = if constant.is_zero() {
        Float::with_val(wp, 1)
    } else {
        Float::with_val(wp, (constant / lead).ln() / d as u32).exp()
    };
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let angle = Float::with_val(wp, &two_pi * k as u32) / d as u32
                + Float::with_val(wp, 0.4) / d as u32;
            let unit = Complex::with_val(wp, (0, angle)).exp();
            unit * &radius
        })
        .collect();

    let mut converged = false;
    for _ in 0..max_iterations {
        let mut all_small = true;
        for k in 0..d {
            let (value, deriv) = horner(&coeffs, &z[k], wp);
            if value.is_zero() {
                continue;
            }
            let newton = Complex::with_val(wp, &value / &deriv);
            if !newton.real().is_finite() || !newton.imag().is_finite() {
                all_small = false;
                // Nudge off a critical point.
                z[k] += Complex::with_val(wp, (Float::i_exp(1, -20), Float::i_exp(1, -21)));
                continue;
            }
            let mut repulsion = Complex::with_val(wp, 0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = Complex::with_val(wp, &z[k] - zj);
                    repulsion += diff.recip();
                }
            }
            let denom = Complex::with_val(wp, 1) - Complex::with_val(wp, &newton * &repulsion);
            let step = Complex::with_val(wp, &newton / &denom);
            if Float::with_val(wp, newton.abs_ref()) >= tol {
                all_small = false;
            }
            if step.real().is_finite() && step.imag().is_finite() {
                z[k] -= step;
            } else {
                z[k] -= newton;
            }
        }
        if all_small {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { iterations: max_iterations });
    }

    let tie = Float::with_val(wp, Float::i_exp(1, -(precision as i32) / 2));
    let mut keyed: Vec<(Float, Float, Complex)> = z
        .into_iter()
        .map(|mut r| {
            let modulus = Float::with_val(wp, r.abs_ref());
            // Real coefficients: a root whose imaginary part is at rounding
            // level is real, and gets argument 0 or pi.
            if Float::with_val(wp, r.imag().abs_ref()) <= Float::with_val(wp, &modulus * &tie) {
                r.mut_imag().assign(0);
            }
            let arg = Float::with_val(wp, r.arg_ref());
            (modulus, arg, r)
        })
        .collect();
    keyed.sort_by(|a, b| {
        let scale = Float::with_val(wp, a.0.max_ref(&b.0));
        let gap = Float::with_val(wp, &a.0 - &b.0).abs();
        if gap <= Float::with_val(wp, &scale * &tie) {
            a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal)
        } else {
            a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal)
        }
    });
    Ok(keyed
        .into_iter()
        .map(|(_, _, r)| {
            let (re, im) = r.into_real_imag();
            ComplexRoot {
                re: Scalar::Float(Float::with_val(precision, re)),
                im: Scalar::Float(Float::with_val(precision, im)),
            }
        })
        .collect())
}
