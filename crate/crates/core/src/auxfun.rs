//! Auxiliary polynomials `f_{i,m}` and their Jacobian.
//!
//! Write `c_k = -a_k / a_m` (zero outside `0..=d`) and `base = c_{m-1}`.
//! A partial tree with `s` empty subtrees is a root carrying a sequence of
//! partial blocks followed by `s` empty slots; `f_{i,m}(x, s)` sums the
//! weights of those whose terminal class is `i`. Everything is a finite
//! polynomial in `x_0..x_{m-1}` because `c_k` vanishes for `k > d`.

use std::collections::HashMap;

use rug::Integer;

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::scalars::{Polynomial, Scalar};

/// `f_0..f_{m-1}` and `jac[i][j] = d f_i / d x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxSystem {
    pub m: usize,
    pub f: Vec<MPoly>,
    pub jac: Vec<Vec<MPoly>>,
    /// `-a_{m-1} / a_m`.
    pub base: Scalar,
}

impl AuxSystem {
    pub fn is_zero(&self) -> bool {
        self.f.iter().all(MPoly::is_zero)
    }

    /// One `f_i = ...` line per function, terms in graded-lex order.
    pub fn dump(&self) -> String {
        self.f.iter().enumerate().map(|(i, f)| format!("f_{i},{} = {f}\n", self.m)).collect()
    }
}

/// Shared state for one `(p, m)`: block sums and memoized partial-tree sums.
struct Builder<'a> {
    p: &'a Polynomial,
    m: usize,
    base: Scalar,
    /// `blocks[k - 1]` is the sum over all partial blocks of length `k`.
    blocks: Vec<MPoly>,
    trees: HashMap<usize, MPoly>,
    aux: HashMap<(usize, usize), MPoly>,
}

impl<'a> Builder<'a> {
    fn new(p: &'a Polynomial, m: usize) -> Result<Self> {
        if m == 0 || m > p.degree() {
            return Err(Error::Range(format!("m = {m} must lie in 1..={}", p.degree())));
        }
        let base = p.neg_ratio(m as i64 - 1, m)?;
        let mut b = Builder { p, m, base, blocks: Vec::new(), trees: HashMap::new(), aux: HashMap::new() };
        let mut length_one = MPoly::constant(m, b.base.clone());
        for i in 0..m {
            length_one = length_one.add(&b.var(i))?;
        }
        b.blocks.push(length_one);
        for k in 2..=m {
            let mut sum = b.zero();
            for h in k - 1..m {
                sum = sum.add(&b.partial_block(k, h)?)?;
            }
            b.blocks.push(sum);
        }
        Ok(b)
    }

    fn c(&self, k: i64) -> Result<Scalar> {
        self.p.neg_ratio(k, self.m)
    }

    fn zero(&self) -> MPoly {
        MPoly::zero(self.m, self.p.mode())
    }

    fn var(&self, i: usize) -> MPoly {
        MPoly::var(self.m, i, self.p.mode()).expect("index below m")
    }

    fn partial_block(&self, k: usize, h: usize) -> Result<MPoly> {
        let m = self.m;
        if m < 2 || h < 1 || h > m - 1 || k < 2 || k > h + 1 {
            return Err(Error::Range(format!("no partial block (k, h) = ({k}, {h}) for m = {m}")));
        }
        let mut sum = self.zero();
        for i in h + 2 - k..m {
            sum = sum.add(&self.var(i))?;
            if i == 1 {
                sum = sum.add(&MPoly::constant(m, self.base.clone()))?;
            }
        }
        let factor = self.c((m - h - 1) as i64)?.try_mul(&self.base.pow_i(k as i32 - 2 - h as i32)?)?;
        sum.scale(&factor)
    }

    fn partial_trees(&mut self, s: usize) -> Result<MPoly> {
        if let Some(t) = self.trees.get(&s) {
            return Ok(t.clone());
        }
        let m = self.m;
        let d = self.p.degree();
        let mut total = self.zero();
        // room left for block lengths before the coefficient index passes d
        if s + m - 1 <= d {
            let budget = d + 1 - m - s;
            let mut counts = vec![0usize; m];
            let mut powers: Vec<Vec<MPoly>> = vec![vec![MPoly::one(m, self.p.mode())]; m];
            self.collect_trees(s, 0, budget, &mut counts, &mut powers, &mut total)?;
        }
        self.trees.insert(s, total.clone());
        Ok(total)
    }

    /// Depth-first over `n_1..n_m` with `sum k n_k <= budget`.
    fn collect_trees(
        &self,
        s: usize,
        slot: usize,
        budget: usize,
        counts: &mut Vec<usize>,
        powers: &mut Vec<Vec<MPoly>>,
        total: &mut MPoly,
    ) -> Result<()> {
        if slot == self.m {
            let len: usize = counts.iter().enumerate().map(|(k, n)| (k + 1) * n).sum();
            if s + len < 2 {
                return Ok(());
            }
            let coef = self.c((s + self.m - 1 + len) as i64)?;
            if coef.is_zero() {
                return Ok(());
            }
            let mut multinomial = Integer::from(Integer::factorial(counts.iter().sum::<usize>() as u32));
            for &n in counts.iter() {
                multinomial /= Integer::from(Integer::factorial(n as u32));
            }
            let mut term = MPoly::constant(self.m, coef.try_mul(&Scalar::from_integer(self.p.mode(), &multinomial))?);
            for (k, &n) in counts.iter().enumerate() {
                term = term.mul(&powers[k][n])?;
            }
            return total.add(&term).map(|t| *total = t);
        }
        let k = slot + 1;
        let mut n = 0;
        while n * k <= budget {
            if powers[slot].len() <= n {
                let next = powers[slot][n - 1].mul(&self.blocks[slot])?;
                powers[slot].push(next);
            }
            counts[slot] = n;
            self.collect_trees(s, slot + 1, budget - n * k, counts, powers, total)?;
            n += 1;
        }
        counts[slot] = 0;
        Ok(())
    }

    fn aux(&mut self, i: usize, s: usize) -> Result<MPoly> {
        let m = self.m;
        if i >= m {
            return Err(Error::Range(format!("i = {i} must be below m = {m}")));
        }
        if let Some(f) = self.aux.get(&(i, s)) {
            return Ok(f.clone());
        }
        let f = if i == m - 1 {
            if s != 0 {
                return Err(Error::SOnFinal(s));
            }
            let mut f = self.partial_trees(m - 1)?.scale(&self.base.pow_i(m as i32 - 1)?)?;
            for k in 0..m - 1 {
                let mut xs = self.zero();
                for j in m - k - 1..m {
                    xs = xs.add(&self.var(j))?;
                }
                let term = xs.mul(&self.partial_trees(k + 1)?)?.scale(&self.base.pow_i(k as i32)?)?;
                f = f.add(&term)?;
            }
            f
        } else if i == 0 {
            let mut f = self.var(0).mul(&self.partial_trees(s + 1)?)?;
            for k in 2..=m {
                let term = self.blocks[k - 1].clone().mul(&self.partial_trees(s + k)?)?;
                f = f.add(&term)?;
            }
            if s >= 2 {
                f = f.add(&MPoly::constant(m, self.c((m - 1 + s) as i64)?))?;
            }
            f
        } else {
            let head = self.var(i).mul(&self.partial_trees(s + 1)?)?;
            let tail = self.aux(i - 1, s + 1)?.scale(&self.base)?;
            head.add(&tail)?
        };
        self.aux.insert((i, s), f.clone());
        Ok(f)
    }
}

/// Sum of the weights of all `(k, h)` partial blocks for `p` and `m`.
pub fn partial_block(m: usize, k: usize, h: usize, p: &Polynomial) -> Result<MPoly> {
    if m < 2 {
        return Err(Error::Range(format!("no partial blocks exist for m = {m}")));
    }
    Builder::new(p, m)?.partial_block(k, h)
}

/// Sum of the weights of all partial trees with `s` empty subtrees.
pub fn partial_trees(m: usize, s: usize, p: &Polynomial) -> Result<MPoly> {
    Builder::new(p, m)?.partial_trees(s)
}

/// `f_{i,m}(x, s)`; the class `m - 1` function exists only for `s = 0`.
pub fn aux_function(m: usize, i: usize, s: usize, p: &Polynomial) -> Result<MPoly> {
    Builder::new(p, m)?.aux(i, s)
}

pub fn build_aux_system(m: usize, p: &Polynomial) -> Result<AuxSystem> {
    let mut b = Builder::new(p, m)?;
    let f = (0..m).map(|i| b.aux(i, 0)).collect::<Result<Vec<_>>>()?;
    let jac = f
        .iter()
        .map(|fi| (0..m).map(|j| fi.partial_derivative(j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(AuxSystem { m, f, jac, base: b.base })
}
