use std::fmt;

use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};

/// Univariate polynomial `a_0 + a_1 z + ... + a_d z^d` with `a_d != 0`, `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    /// Coefficients in ascending order of power. All must share one mode.
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Range(format!(
                "a polynomial needs at least two coefficients, got {}",
                coeffs.len()
            )));
        }
        let mode = coeffs[0].mode();
        if coeffs.iter().any(|c| c.mode() != mode) {
            return Err(Error::MixedVariants("polynomial coefficients"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Range("polynomial coefficients must be finite".into()));
        }
        if coeffs.last().is_some_and(Scalar::is_zero) {
            return Err(Error::Range("leading coefficient is zero".into()));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_i64s(mode: Mode, coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Scalar::from_i64(mode, c)).collect())
    }

    /// Monic polynomial `prod (z - r)`.
    pub fn from_roots(roots: &[Scalar]) -> Result<Self> {
        let first = roots
            .first()
            .ok_or_else(|| Error::Range("at least one root is required".into()))?;
        let mode = first.mode();
        let mut coeffs = vec![Scalar::one(mode)];
        for r in roots {
            let mut next = vec![Scalar::zero(mode); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &c.try_mul(r)?;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.coeffs[0].mode()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `a_k`, zero outside `0..=d`.
    pub fn coeff(&self, k: i64) -> Scalar {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_else(|| Scalar::zero(self.mode()))
    }

    /// `-a_k / a_m`, the factor a tree vertex contributes.
    pub fn neg_ratio(&self, k: i64, m: usize) -> Result<Scalar> {
        let am = self.coeff(m as i64);
        if am.is_zero() {
            return Err(Error::ZeroDenominator(format!("a_{m} = 0")));
        }
        Ok(-self.coeff(k).try_div(&am)?)
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c.to_mode(mode)).collect::<Result<_>>()?)
    }

    pub fn eval(&self, z: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.mode());
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(z)?.try_add(c)?;
        }
        Ok(acc)
    }

    /// `f'` as coefficient list (may be a constant, hence not a `Polynomial`).
    pub fn derivative_coeffs(&self) -> Vec<Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_i64(self.mode(), k as i64))
            .collect()
    }

    pub fn eval_derivative(&self, z: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.mode());
        for c in self.derivative_coeffs().iter().rev() {
            acc = acc.try_mul(z)?.try_add(c)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
