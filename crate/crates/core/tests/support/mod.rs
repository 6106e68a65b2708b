//! Shared fixtures and independent oracles for the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use nrs_core::mpoly::MPoly;
use nrs_core::scalars::{parse_scalar, Mode, Polynomial, Scalar};
use rand::Rng;

const EX: Mode = Mode::Exact;

pub const QUINTIC: [&str; 6] = ["1", "-31/16", "155/128", "-155/512", "31/1024", "-1/1024"];

pub fn quintic() -> Polynomial {
    Polynomial::new(QUINTIC.iter().map(|s| parse_scalar(s, 64).unwrap()).collect()).unwrap()
}

/// Exact polynomial with nonzero coefficients `n/q`, `|n| <= 9`, `q <= 5`.
pub fn random_exact_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    loop {
        let coeffs: Vec<Scalar> =
            (0..=degree).map(|_| Scalar::ratio(EX, rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        if coeffs.iter().all(|c| !c.is_zero()) {
            return Polynomial::new(coeffs).unwrap();
        }
    }
}

/// `count` sorted distinct rationals in `[lo, hi]` (denominator 64), each at
/// least `min_ratio` times the previous one.
pub fn random_roots(rng: &mut impl Rng, count: usize, lo: i64, hi: i64, min_ratio: f64) -> Vec<Scalar> {
    loop {
        let mut r: Vec<i64> = (0..count).map(|_| rng.gen_range(lo * 64..=hi * 64)).collect();
        r.sort_unstable();
        if r.windows(2).all(|w| w[1] as f64 >= w[0] as f64 * min_ratio && w[1] > w[0]) {
            return r.into_iter().map(|n| Scalar::ratio(EX, n, 64)).collect();
        }
    }
}

fn var(m: usize, i: usize) -> MPoly {
    MPoly::var(m, i, EX).unwrap()
}

fn cst(m: usize, c: Scalar) -> MPoly {
    MPoly::constant(m, c)
}

fn c(p: &Polynomial, k: i64, m: usize) -> Scalar {
    p.neg_ratio(k, m).unwrap()
}

/// One-variable auxiliary function in closed form:
/// `-(f(base + x) - a_1 (base + x) - a_0) / a_1` with `base = -a_0/a_1`.
pub fn closed_form_m1(p: &Polynomial) -> MPoly {
    let z = cst(1, c(p, 0, 1)).add(&var(1, 0)).unwrap();
    let mut fz = MPoly::zero(1, EX);
    for k in (0..=p.degree()).rev() {
        fz = fz.mul(&z).unwrap().add(&cst(1, p.coeff(k as i64))).unwrap();
    }
    let linear = z.scale(&p.coeff(1)).unwrap().add(&cst(1, p.coeff(0))).unwrap();
    fz.sub(&linear).unwrap().scale(&(Scalar::from_i64(EX, -1).try_div(&p.coeff(1)).unwrap())).unwrap()
}

/// Building blocks of a partial tree below the root.
#[derive(Clone, Debug)]
enum Block {
    /// subtree of class i
    Class(usize),
    /// the one-leaf subtree
    Leaf,
    /// class-i subtree followed by k - 1 leaves, the last of degree -h
    Cancel { i: usize, k: usize, h: usize },
    /// k leaves, the last of degree -(k - 1)
    LeafCancel { k: usize },
}

impl Block {
    fn len(&self) -> usize {
        match self {
            Block::Class(_) | Block::Leaf => 1,
            Block::Cancel { k, .. } | Block::LeafCancel { k } => *k,
        }
    }
}

fn all_blocks(m: usize) -> Vec<Block> {
    let mut out: Vec<Block> = (0..m).map(Block::Class).collect();
    out.push(Block::Leaf);
    for h in 1..m {
        for k in 2..=h + 1 {
            for i in h + 2 - k..m {
                out.push(Block::Cancel { i, k, h });
            }
        }
    }
    for k in 2..=m {
        out.push(Block::LeafCancel { k });
    }
    out
}

fn block_weight(b: &Block, p: &Polynomial, m: usize) -> MPoly {
    let base = c(p, m as i64 - 1, m);
    match b {
        Block::Class(i) => var(m, *i),
        Block::Leaf => cst(m, base),
        Block::Cancel { i, k, h } => {
            let factor = base.pow_i(*k as i32 - 2 - *h as i32).unwrap().try_mul(&c(p, (m - 1 - h) as i64, m)).unwrap();
            var(m, *i).scale(&factor).unwrap()
        }
        Block::LeafCancel { k } => cst(m, c(p, (m - k) as i64, m)),
    }
}

/// Class of the trees a partial tree stands for: trailing leaves plus the
/// trailing zeros of the last class block, capped at `m - 1`.
fn class_of(seq: &[Block], m: usize) -> usize {
    let mut trailing = 0;
    for b in seq.iter().rev() {
        match b {
            Block::Leaf => trailing += 1,
            Block::Class(i) => {
                trailing += i;
                break;
            }
            _ => break,
        }
    }
    trailing.min(m - 1)
}

/// Sums of partial trees with `s` empty root slots, by class, found by
/// enumerating block sequences directly.
pub fn block_oracle(p: &Polynomial, m: usize, s: usize) -> Vec<MPoly> {
    let blocks = all_blocks(m);
    let max_len = p.degree() + 1 - m;
    let mut sums = vec![MPoly::zero(m, EX); m];
    let mut stack: Vec<Vec<Block>> = vec![vec![]];
    while let Some(seq) = stack.pop() {
        let len: usize = seq.iter().map(Block::len).sum();
        let degree = s + len;
        if degree >= 2 && m - 1 + degree <= p.degree() {
            let mut w = cst(m, c(p, (m - 1 + degree) as i64, m));
            for b in &seq {
                w = w.mul(&block_weight(b, p, m)).unwrap();
            }
            let class = class_of(&seq, m);
            sums[class] = sums[class].add(&w).unwrap();
        }
        for b in &blocks {
            if s + len + b.len() <= max_len {
                let mut next = seq.clone();
                next.push(b.clone());
                stack.push(next);
            }
        }
    }
    sums
}

/// Mismatches between `aux_function` and the block oracle, as descriptions.
pub fn oracle_mismatches(p: &Polynomial, max_m: usize, max_s: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for m in 1..=max_m.min(p.degree()) {
        for s in 0..=max_s {
            let expected = block_oracle(p, m, s);
            for (i, e) in expected.iter().enumerate() {
                if i == m - 1 && s > 0 {
                    continue;
                }
                let got = nrs_core::auxfun::aux_function(m, i, s, p).unwrap();
                if &got != e {
                    bad.push(format!("degree {} m {m} i {i} s {s}", p.degree()));
                }
            }
        }
    }
    bad
}
