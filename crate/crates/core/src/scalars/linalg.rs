use rug::Float;

use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Range("matrix must be at least 1x1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize, mode: Mode) -> Self {
        let mut data = vec![Scalar::zero(mode); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one(mode);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero(x[0].mode());
                for (a, b) in self.row(i).iter().zip(x) {
                    acc += &a.try_mul(b)?;
                }
                Ok(acc)
            })
            .collect()
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> =
                self.row(i).iter().map(|x| super::text::print_scalar(x, 10)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Solves `a * x = b` by Gaussian elimination with partial pivoting.
///
/// Exact systems fail only on an exactly zero pivot. Float systems fail when
/// the best available pivot is below `2^(-precision/2)` times the largest
/// entry magnitude of the input matrix.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = a.size();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let mode = a.get(0, 0).mode();
    if a.data.iter().chain(b).any(|x| x.mode() != mode) {
        return Err(Error::MixedVariants("linear solve"));
    }
    let threshold = match mode {
        Mode::Exact => None,
        Mode::Float(p) => {
            let scale = a
                .data
                .iter()
                .map(Scalar::abs)
                .max_by(|x, y| x.compare(y))
                .map(|s| s.to_float(p))
                .unwrap_or_else(|| Float::with_val(p, 0));
            Some(scale * Float::with_val(p, Float::i_exp(1, -(p as i32) / 2)))
        }
    };

    let mut m = a.data.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().compare(&m[j * n + col].abs()))
            .unwrap_or(col);
        let pivot = m[pivot_row * n + col].clone();
        let singular = match &threshold {
            None => pivot.is_zero(),
            Some(t) => pivot.is_zero() || pivot.abs_lt(t),
        };
        if singular {
            return Err(Error::SingularMatrix {
                column: col,
                pivot: super::text::print_scalar(&pivot, 10),
            });
        }
        if pivot_row != col {
            for j in 0..n {
                m.swap(pivot_row * n + j, col * n + j);
            }
            rhs.swap(pivot_row, col);
        }
        for i in col + 1..n {
            let factor = m[i * n + col].try_div(&pivot)?;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let t = factor.try_mul(&m[col * n + j])?;
                m[i * n + j] -= &t;
            }
            let t = factor.try_mul(&rhs[col])?;
            rhs[i] -= &t;
        }
    }
    let mut x = vec![Scalar::zero(mode); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..n {
            acc -= &m[i * n + j].try_mul(&x[j])?;
        }
        x[i] = acc.try_div(&m[i * n + i])?;
    }
    Ok(x)
}
