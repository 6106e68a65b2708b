use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Default mantissa width for floating-point work.
pub const DEFAULT_PRECISION: u32 = 384;
/// Smallest mantissa width accepted for [`Mode::Float`].
pub const MIN_PRECISION: u32 = 64;

/// Arithmetic mode shared by every value taking part in one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    /// Binary floating point with the given mantissa bits.
    Float(u32),
}

impl Mode {
    pub fn float(precision: u32) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::Range(format!(
                "precision {precision} is below the minimum of {MIN_PRECISION} bits"
            )));
        }
        Ok(Mode::Float(precision))
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Mode::Exact)
    }

    /// Mantissa bits, or `None` for exact arithmetic.
    pub fn precision(self) -> Option<u32> {
        match self {
            Mode::Exact => None,
            Mode::Float(p) => Some(p),
        }
    }
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Float(DEFAULT_PRECISION)
    }
}

/// A real number, either an exact rational or a multi-precision binary float.
///
/// Exact values are kept in lowest terms with a positive denominator (the
/// representation guaranteed by [`rug::Rational`]). Binary operations on two
/// floats produce a result at the wider of the two precisions; combining an
/// exact value with a float is a programming error and panics in the operator
/// impls, while the `try_*` methods report it as [`Error::MixedVariants`].
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(Float),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        Self::from_i64(mode, 0)
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_i64(mode, 1)
    }

    pub fn from_i64(mode: Mode, value: i64) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(Rational::from(value)),
            Mode::Float(p) => Scalar::Float(Float::with_val(p, value)),
        }
    }

    pub fn from_integer(mode: Mode, value: &Integer) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(Rational::from(value)),
            Mode::Float(p) => Scalar::Float(Float::with_val(p, value)),
        }
    }

    pub fn from_rational(mode: Mode, value: &Rational) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(value.clone()),
            Mode::Float(p) => Scalar::Float(Float::with_val(p, value)),
        }
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(mode: Mode, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(mode, &Rational::from((num, den)))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(f) => Mode::Float(f.prec()),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.cmp0() == Ordering::Equal,
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(f) => f.is_finite(),
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let ord = match self {
            Scalar::Exact(r) => r.cmp0(),
            Scalar::Float(f) => f.cmp0().unwrap_or(Ordering::Equal),
        };
        match ord {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.clone().abs()),
            Scalar::Float(f) => Scalar::Float(f.clone().abs()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&Float> {
        match self {
            Scalar::Float(f) => Some(f),
            Scalar::Exact(_) => None,
        }
    }

    /// Value rounded to a float of the given precision.
    pub fn to_float(&self, precision: u32) -> Float {
        match self {
            Scalar::Exact(r) => Float::with_val(precision, r),
            Scalar::Float(f) => Float::with_val(precision, f),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(f) => f.to_f64(),
        }
    }

    /// Converts into `mode`. Floats convert to exact values losslessly; NaN
    /// and infinities cannot be converted.
    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        match (self, mode) {
            (Scalar::Exact(r), m) => Ok(Self::from_rational(m, r)),
            (Scalar::Float(f), Mode::Float(p)) => Ok(Scalar::Float(Float::with_val(p, f))),
            (Scalar::Float(f), Mode::Exact) => f
                .to_rational()
                .map(Scalar::Exact)
                .ok_or_else(|| Error::Range(format!("non-finite value {f} has no exact form"))),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(Rational::from(a + b))),
            (Scalar::Float(a), Scalar::Float(b)) => {
                Ok(Scalar::Float(Float::with_val(a.prec().max(b.prec()), a + b)))
            }
            _ => Err(Error::MixedVariants("addition")),
        }
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(Rational::from(a - b))),
            (Scalar::Float(a), Scalar::Float(b)) => {
                Ok(Scalar::Float(Float::with_val(a.prec().max(b.prec()), a - b)))
            }
            _ => Err(Error::MixedVariants("subtraction")),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(Rational::from(a * b))),
            (Scalar::Float(a), Scalar::Float(b)) => {
                Ok(Scalar::Float(Float::with_val(a.prec().max(b.prec()), a * b)))
            }
            _ => Err(Error::MixedVariants("multiplication")),
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator(format!("{self} / 0")));
        }
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(Rational::from(a / b))),
            (Scalar::Float(a), Scalar::Float(b)) => {
                Ok(Scalar::Float(Float::with_val(a.prec().max(b.prec()), a / b)))
            }
            _ => Err(Error::MixedVariants("division")),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow_i(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::ZeroDenominator(format!("0^{exp}")));
        }
        Ok(match self {
            Scalar::Exact(r) => {
                let base = if exp < 0 { r.clone().recip() } else { r.clone() };
                let mut acc = Rational::from(1);
                for _ in 0..exp.unsigned_abs() {
                    acc *= &base;
                }
                Scalar::Exact(acc)
            }
            Scalar::Float(f) => Scalar::Float(Float::with_val(f.prec(), f.pow(exp))),
        })
    }

    /// Comparison of `|self|` against a float threshold, valid in both modes.
    pub fn abs_lt(&self, threshold: &Float) -> bool {
        match self {
            Scalar::Exact(r) => {
                let a = r.clone().abs();
                threshold.partial_cmp(&a) == Some(Ordering::Greater)
            }
            Scalar::Float(f) => f.clone().abs() < *threshold,
        }
    }

    /// Total order on finite values; NaN compares as equal to everything.
    pub fn compare(&self, rhs: &Self) -> Ordering {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            (Scalar::Exact(a), Scalar::Float(b)) => {
                b.partial_cmp(a).map(Ordering::reverse).unwrap_or(Ordering::Equal)
            }
            (Scalar::Float(a), Scalar::Exact(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => f.write_str(&super::text::print_scalar(&Scalar::Float(x.clone()), 20)),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => *a += b,
            (Scalar::Float(a), Scalar::Float(b)) if a.prec() >= b.prec() => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => *a -= b,
            (Scalar::Float(a), Scalar::Float(b)) if a.prec() >= b.prec() => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => *a *= b,
            (Scalar::Float(a), Scalar::Float(b)) if a.prec() >= b.prec() => *a *= b,
            _ => *self = &*self * rhs,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_are_normalized() {
        let x = Scalar::ratio(Mode::Exact, 6, -4);
        let r = x.as_rational().unwrap();
        assert_eq!(*r.numer(), -3);
        assert_eq!(*r.denom(), 2);
    }

    #[test]
    fn mixing_variants_is_an_error() {
        let a = Scalar::one(Mode::Exact);
        let b = Scalar::one(Mode::Float(128));
        assert_eq!(a.try_add(&b), Err(Error::MixedVariants("addition")));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn float_result_takes_wider_precision() {
        let a = Scalar::one(Mode::Float(128));
        let b = Scalar::one(Mode::Float(384));
        assert_eq!((&a + &b).mode(), Mode::Float(384));
        assert_eq!((&b * &a).mode(), Mode::Float(384));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let a = Scalar::one(Mode::Exact);
        assert!(matches!(a.try_div(&Scalar::zero(Mode::Exact)), Err(Error::ZeroDenominator(_))));
        let f = Scalar::one(Mode::Float(64));
        assert!(f.try_div(&Scalar::zero(Mode::Float(64))).is_err());
    }

    #[test]
    fn integer_powers() {
        let x = Scalar::ratio(Mode::Exact, 2, 3);
        assert_eq!(x.pow_i(3).unwrap(), Scalar::ratio(Mode::Exact, 8, 27));
        assert_eq!(x.pow_i(-2).unwrap(), Scalar::ratio(Mode::Exact, 9, 4));
        assert_eq!(x.pow_i(0).unwrap(), Scalar::one(Mode::Exact));
        assert!(Scalar::zero(Mode::Exact).pow_i(-1).is_err());
    }

    #[test]
    fn float_to_exact_is_lossless() {
        let f = Scalar::ratio(Mode::Float(64), 3, 8);
        assert_eq!(f.to_mode(Mode::Exact).unwrap(), Scalar::ratio(Mode::Exact, 3, 8));
    }

    #[test]
    fn abs_lt_works_in_both_modes() {
        let t = Float::with_val(64, 0.5);
        assert!(Scalar::ratio(Mode::Exact, -1, 3).abs_lt(&t));
        assert!(!Scalar::ratio(Mode::Exact, 2, 3).abs_lt(&t));
        assert!(Scalar::ratio(Mode::Float(64), -1, 4).abs_lt(&t));
    }
}
