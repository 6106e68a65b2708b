//! The NRS(m) iteration and the Newton baseline.
//!
//! Step `n -> n + 1` solves
//! `(I - G(S_n)) J_{n+1} = F(S_n) - F(S_{n-1}) - G(S_{n-1}) J_n`,
//! with right-hand side `F(0)` on the first step, where `F` collects the
//! auxiliary polynomials and `G` is their Jacobian.

use rug::Float;

use crate::auxfun::{build_aux_system, AuxSystem};
use crate::error::{Error, Result};
use crate::scalars::{solve_linear, Matrix, Mode, Polynomial, Scalar, DEFAULT_PRECISION};

pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRow {
    pub n: usize,
    /// `J_{0,m}(n) .. J_{m-1,m}(n)`.
    pub j: Vec<Scalar>,
    /// `J_m(n)`, the row sum of `j`.
    pub total: Scalar,
    /// `-a_{m-1}/a_m + sum_i S_{i,m}(n)`.
    pub partial_sum: Scalar,
}

#[derive(Clone, Debug)]
pub struct NrsState {
    m: usize,
    n: usize,
    s: Vec<Scalar>,
    s_prev: Vec<Scalar>,
    j_last: Vec<Scalar>,
    aux: AuxSystem,
    /// `F` and `G` at `s_prev`, kept from the previous step.
    prev_eval: Option<(Vec<Scalar>, Matrix)>,
}

/// Starting state at `n = 0`; every accumulator is zero.
pub fn init(p: &Polynomial, m: usize) -> Result<NrsState> {
    if m == 0 || m > p.degree() {
        return Err(Error::Range(format!("m = {m} must lie in 1..={}", p.degree())));
    }
    let aux = build_aux_system(m, p)?;
    let zeros = vec![Scalar::zero(p.mode()); m];
    Ok(NrsState { m, n: 0, s: zeros.clone(), s_prev: zeros.clone(), j_last: zeros, aux, prev_eval: None })
}

impl NrsState {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn step_count(&self) -> usize {
        self.n
    }

    pub fn accumulated(&self) -> &[Scalar] {
        &self.s
    }

    pub fn previous(&self) -> &[Scalar] {
        &self.s_prev
    }

    pub fn aux(&self) -> &AuxSystem {
        &self.aux
    }

    pub fn base(&self) -> &Scalar {
        &self.aux.base
    }

    /// Row for the current step.
    pub fn row(&self) -> IterationRow {
        let mut total = Scalar::zero(self.aux.base.mode());
        for x in &self.j_last {
            total += x;
        }
        let mut partial_sum = self.aux.base.clone();
        for x in &self.s {
            partial_sum += x;
        }
        IterationRow { n: self.n, j: self.j_last.clone(), total, partial_sum }
    }

    fn evaluate(&self, point: &[Scalar]) -> Result<(Vec<Scalar>, Matrix)> {
        let f = self.aux.f.iter().map(|fi| fi.evaluate(point)).collect::<Result<Vec<_>>>()?;
        let g = self
            .aux
            .jac
            .iter()
            .map(|row| row.iter().map(|g| g.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok((f, Matrix::from_rows(g)?))
    }

    pub fn step(&mut self) -> Result<IterationRow> {
        let mode = self.aux.base.mode();
        let (f_cur, g_cur) = self.evaluate(&self.s)?;
        let rhs = match &self.prev_eval {
            None => f_cur.clone(),
            Some((f_prev, g_prev)) => {
                let correction = g_prev.mul_vec(&self.j_last)?;
                (0..self.m)
                    .map(|i| f_cur[i].try_sub(&f_prev[i])?.try_sub(&correction[i]))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let mut a = Matrix::identity(self.m, mode);
        for i in 0..self.m {
            for k in 0..self.m {
                let v = a.get(i, k).try_sub(g_cur.get(i, k))?;
                a.set(i, k, v);
            }
        }
        let j = solve_linear(&a, &rhs).map_err(|e| match e {
            Error::SingularMatrix { .. } => {
                Error::SingularSystem { step: self.n + 1, detail: format!("{e}; I - G =\n{a}") }
            }
            other => other,
        })?;
        let next: Vec<Scalar> =
            self.s.iter().zip(&j).map(|(s, x)| s.try_add(x)).collect::<Result<_>>()?;
        self.s_prev = std::mem::replace(&mut self.s, next);
        self.j_last = j;
        self.prev_eval = Some((f_cur, g_cur));
        self.n += 1;
        Ok(self.row())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub max_steps: usize,
    /// Stop once `|J_m(n)| < tol`; defaults to `2^(-precision + 32)`.
    pub tol: Option<Float>,
    /// Arithmetic mode; exact inputs are converted when this is a float mode.
    pub mode: Mode,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_steps: DEFAULT_MAX_STEPS, tol: None, mode: Mode::default() }
    }
}

impl RunOptions {
    pub fn tolerance(&self) -> Float {
        let prec = self.mode.precision().unwrap_or(DEFAULT_PRECISION);
        self.tol.clone().unwrap_or_else(|| Float::with_val(prec, Float::i_exp(1, 32 - prec as i32)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Converged,
    MaxSteps,
    Failed(Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    /// Rows `0..=n`, starting with the initial row.
    pub rows: Vec<IterationRow>,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn last(&self) -> &IterationRow {
        self.rows.last().expect("a report always has the initial row")
    }
}

/// Iterates until convergence, `max_steps` steps, or a singular system.
pub fn run(p: &Polynomial, m: usize, opts: &RunOptions) -> Result<RunReport> {
    let p = match (p.mode(), opts.mode) {
        (Mode::Exact, Mode::Exact) => p.clone(),
        (_, Mode::Exact) => return Err(Error::MixedVariants("exact run on float coefficients")),
        (_, mode) => p.to_mode(mode)?,
    };
    let tol = opts.tolerance();
    let mut state = init(&p, m)?;
    let mut rows = vec![state.row()];
    for _ in 0..opts.max_steps {
        match state.step() {
            Ok(row) => {
                let done = row.total.abs_lt(&tol);
                rows.push(row);
                if done {
                    return Ok(RunReport { rows, verdict: Verdict::Converged });
                }
            }
            Err(e @ Error::SingularSystem { .. }) => {
                return Ok(RunReport { rows, verdict: Verdict::Failed(e) })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(RunReport { rows, verdict: Verdict::MaxSteps })
}

/// Newton iterates `c_0 = 0, c_{k+1} = c_k - f(c_k)/f'(c_k)` for `k < steps`.
pub fn newton_run(p: &Polynomial, steps: usize, mode: Mode) -> Result<Vec<Scalar>> {
    let p = if p.mode() == mode { p.clone() } else { p.to_mode(mode)? };
    let mut out = vec![Scalar::zero(mode)];
    for k in 0..steps {
        let c = &out[k];
        let d = p.eval_derivative(c)?;
        if d.is_zero() {
            return Err(Error::DerivativeZero { step: k });
        }
        let next = c.try_sub(&p.eval(c)?.try_div(&d)?)?;
        out.push(next);
    }
    Ok(out)
}
