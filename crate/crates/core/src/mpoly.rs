//! Sparse multivariate polynomials over [`Scalar`] in `x_0..x_{m-1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographically with `x_0` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Never stores a zero coefficient, so equal polynomials compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    nvars: usize,
    mode: Mode,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize, mode: Mode) -> Self {
        MPoly { nvars, mode, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, c.mode());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, mode: Mode) -> Self {
        Self::constant(nvars, Scalar::one(mode))
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize, mode: Mode) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(nvars, mode);
        p.terms.insert(Monomial(e), Scalar::one(mode));
        Ok(p)
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        nvars: usize,
        mode: Mode,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, mode);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            if c.mode() != mode {
                return Err(Error::MixedVariants("polynomial terms"));
            }
            p.add_term(Monomial(e), c)?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    /// Highest total degree of a term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        if self.mode != other.mode {
            return Err(Error::MixedVariants("polynomial arithmetic"));
        }
        Ok(())
    }

    fn add_term(&mut self, e: Monomial, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing = existing.try_add(&c)?;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            mode: self.mode,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<MPoly> {
        if c.mode() != self.mode {
            return Err(Error::MixedVariants("polynomial scaling"));
        }
        let mut out = Self::zero(self.nvars, self.mode);
        if c.is_zero() {
            return Ok(out);
        }
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.try_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars, self.mode);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.times(e2), c1.try_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, mut n: u32) -> Result<MPoly> {
        let mut result = Self::one(self.nvars, self.mode);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn partial_derivative(&self, j: usize) -> Result<MPoly> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange { index: j, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars, self.mode);
        for (e, c) in &self.terms {
            let k = e.0[j];
            if k == 0 {
                continue;
            }
            let mut d = e.0.clone();
            d[j] -= 1;
            out.add_term(Monomial(d), c.try_mul(&Scalar::from_i64(self.mode, k as i64))?)?;
        }
        Ok(out)
    }

    /// Value at `point`, which must have `nvars` entries in this polynomial's mode.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        if point.iter().any(|x| x.mode() != self.mode) {
            return Err(Error::MixedVariants("polynomial evaluation"));
        }
        let mut acc = Scalar::zero(self.mode);
        if self.terms.is_empty() {
            return Ok(acc);
        }
        // powers[j][k] = x_j^k up to the largest exponent of x_j
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(self.nvars);
        for (j, x) in point.iter().enumerate() {
            let top = self.terms.keys().map(|e| e.0[j]).max().unwrap_or(0) as usize;
            let mut row = vec![Scalar::one(self.mode)];
            for k in 1..=top {
                let next = row[k - 1].try_mul(x)?;
                row.push(next);
            }
            powers.push(row);
        }
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (j, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.try_mul(&powers[j][k as usize])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn to_mode(&self, mode: Mode) -> Result<MPoly> {
        let mut out = Self::zero(self.nvars, mode);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.to_mode(mode)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    /// Ascending graded-lex order, e.g. `-1/2 + 3*x0 + x0*x1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let factors: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("x{j}") } else { format!("x{j}^{k}") })
                .collect();
            let negative = c.signum() < 0;
            let magnitude = c.abs();
            let coef = match &magnitude {
                Scalar::Exact(r) => r.to_string(),
                x => crate::scalars::print_scalar(x, 10),
            };
            let unit = magnitude == Scalar::one(self.mode);
            let body = match (factors.is_empty(), unit) {
                (true, _) => coef,
                (false, true) => factors.join("*"),
                (false, false) => format!("{coef}*{}", factors.join("*")),
            };
            match (first, negative) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
