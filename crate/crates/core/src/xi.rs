//! Taylor coefficients of `xi(1/2 + i sqrt(t)) = sum a_k t^k` and the Jensen
//! polynomials built from them.
//!
//! `xi(s) = 1 - 2 sum_n 1/(n+1)! sum_{k<=n} b_{k+1}/2^{k+1} [n k] P_k(s)` with
//! `P_k(s) = s prod_{j<=k} (1 - s - 2j) + (1 - s) prod_{j<=k} (s - 2j)` and
//! `b_k = sum_{n>=1} exp(-pi n^2) / (pi n^2)^k`. The double sum is reordered
//! by `k`, so each `P_k` is expanded once in `u = s - 1/2` with exact
//! rational coefficients and weighted by `sum_{n=k}^{n_max} [n k] / (n+1)!`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::scalars::{Mode, Polynomial, Scalar, MIN_PRECISION};

pub const DEFAULT_NMAX: usize = 100;
pub const DEFAULT_KMAX: usize = 8;

/// Extra bits carried while accumulating the u-expansion.
const GUARD_BITS: u32 = 64;

/// Unsigned Stirling numbers of the first kind `[n k]` for `n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::from(1)]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![Integer::new(); n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                if k <= n {
                    *slot += Integer::from(&prev[k] * n as u64);
                }
                if k >= 1 {
                    *slot += &prev[k - 1];
                }
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&Integer> {
        if n > self.n_max() || k > n {
            return Err(Error::Range(format!("[{n} {k}] needs 0 <= k <= n <= {}", self.n_max())));
        }
        Ok(&self.rows[n][k])
    }

    pub fn row(&self, n: usize) -> Result<&[Integer]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Range(format!("row {n} beyond n_max = {}", self.n_max())))
    }
}

pub fn stirling_unsigned(n: usize, k: usize) -> Result<Integer> {
    if k > n {
        return Err(Error::Range(format!("[{n} {k}] needs k <= n")));
    }
    Ok(StirlingTable::new(n).get(n, k)?.clone())
}

/// `b_k` summed until the next term drops below `2^-(precision+8)` of the sum.
pub fn b_coefficient(k: u32, precision: u32) -> Scalar {
    Scalar::Float(b_float(k, precision))
}

fn b_float(k: u32, precision: u32) -> Float {
    let pi = Float::with_val(precision, Constant::Pi);
    let mut sum = Float::new(precision);
    for n in 1u32.. {
        let pn2 = Float::with_val(precision, &pi * (n * n));
        let term = Float::with_val(precision, (-pn2.clone()).exp()) / pn2.pow(k);
        if n > 1 && term < Float::with_val(precision, &sum >> (precision + 8)) {
            break;
        }
        sum += term;
    }
    sum
}

fn mul_linear(poly: &[Rational], c0: &Rational, c1: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::new(); poly.len() + 1];
    for (i, p) in poly.iter().enumerate() {
        out[i] += Rational::from(p * c0);
        out[i + 1] += Rational::from(p * c1);
    }
    out
}

/// The two product terms of `P_k` as polynomials in `u`, ascending powers.
fn product_terms(k: usize) -> (Vec<Rational>, Vec<Rational>) {
    let half = Rational::from((1, 2));
    let one = Rational::from(1);
    let minus_one = Rational::from(-1);
    // s = 1/2 + u, 1 - s = 1/2 - u
    let mut first = vec![half.clone(), one.clone()];
    let mut second = vec![half.clone(), minus_one.clone()];
    for j in 0..=k {
        let c = Rational::from(&half - Rational::from(2 * j as i64));
        first = mul_linear(&first, &c, &minus_one);
        second = mul_linear(&second, &c, &one);
    }
    (first, second)
}

#[derive(Clone, Debug, PartialEq)]
pub struct XiSeries {
    pub n_max: usize,
    pub precision: u32,
    /// `a_0 ..= a_kmax`, in `Float(precision)` mode.
    pub coefficients: Vec<Scalar>,
    /// Largest absolute odd-power coefficient of the u-expansion; the two
    /// product terms are mirror images, so this is 0 when they are built right.
    pub odd_residual: Float,
}

impl XiSeries {
    pub fn k_max(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn a(&self, k: usize) -> Option<&Scalar> {
        self.coefficients.get(k)
    }
}

/// Coefficients `a_0 ..= a_kmax`, summing the outer series up to `n_max`.
pub fn xi_coefficients(n_max: usize, k_max: usize, precision: u32) -> Result<XiSeries> {
    if precision < 128 {
        return Err(Error::Range(format!("precision {precision} is below 128 bits")));
    }
    if n_max < 2 * k_max {
        return Err(Error::Range(format!("n_max = {n_max} must be at least 2 * k_max = {}", 2 * k_max)));
    }
    let work = precision + GUARD_BITS;
    let top = 2 * k_max + 1;
    let stirling = StirlingTable::new(n_max);
    let mut factorials = vec![Integer::from(1)];
    for n in 1..=n_max + 1 {
        let next = Integer::from(&factorials[n - 1] * n as u64);
        factorials.push(next);
    }
    // the two product terms are accumulated apart and only combined at the end
    let mut acc = [vec![Float::new(work); top + 1], vec![Float::new(work); top + 1]];
    for k in 0..=n_max {
        let mut weight = Rational::new();
        for n in k..=n_max {
            weight += Rational::from((stirling.get(n, k)?.clone(), factorials[n + 1].clone()));
        }
        if weight == 0 {
            continue;
        }
        let scale = b_float(k as u32 + 1, work) * Float::with_val(work, &weight) >> (k as u32 + 1);
        let (first, second) = product_terms(k);
        for (slot, term) in acc.iter_mut().zip([first, second]) {
            for (e, c) in term.iter().enumerate().take(top + 1) {
                slot[e] += Float::with_val(work, &scale * c);
            }
        }
    }
    let [first, second] = acc;
    let mut u_coeffs: Vec<Float> = first.into_iter().zip(second).map(|(a, b)| (a + b) * -2i32).collect();
    u_coeffs[0] += 1u32;
    let mut odd_residual = Float::new(precision);
    for c in u_coeffs.iter().skip(1).step_by(2) {
        let r = Float::with_val(precision, c.abs_ref());
        if r > odd_residual {
            odd_residual = r;
        }
    }
    let bound = Float::with_val(precision, Float::i_exp(1, 48 - precision as i32));
    if odd_residual >= bound {
        let power = u_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .find(|(_, c)| Float::with_val(precision, c.abs_ref()) >= bound)
            .map_or(1, |(e, _)| e);
        return Err(Error::OddPowerResidual { power, residual: odd_residual.to_string_radix(10, Some(8)) });
    }
    let coefficients = (0..=k_max)
        .map(|j| {
            let c = Float::with_val(precision, &u_coeffs[2 * j]);
            Scalar::Float(if j % 2 == 1 { -c } else { c })
        })
        .collect();
    Ok(XiSeries { n_max, precision, coefficients, odd_residual })
}

/// `C(N, k) a_k` for `k = 0..=N`.
pub fn jensen_coefficients(series: &XiSeries, degree: usize) -> Result<Vec<Scalar>> {
    if degree > series.k_max() {
        return Err(Error::Range(format!("Jensen degree {degree} exceeds k_max = {}", series.k_max())));
    }
    let mode = Mode::Float(series.precision.max(MIN_PRECISION));
    (0..=degree)
        .map(|k| Scalar::from_integer(mode, &Integer::from(Integer::binomial_u(degree as u32, k as u32))).try_mul(&series.coefficients[k]))
        .collect()
}

/// Degree-`N` Jensen polynomial `sum C(N, k) a_k z^k`; needs `N >= 1`.
pub fn jensen_polynomial(series: &XiSeries, degree: usize) -> Result<Polynomial> {
    if degree == 0 {
        return Err(Error::Range("the degree-0 Jensen polynomial is the constant a_0; use jensen_coefficients".into()));
    }
    Polynomial::new(jensen_coefficients(series, degree)?)
}
