//! Graded truncations of the hypergeometric root series and of the tree sum
//! `A_m`, plus a grade-by-grade comparison of the two.
//!
//! Grade `N` of the tree sum (words with `N` letters) is compared with the
//! series terms whose distinguished index equals `N - 1`.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::genluk::{count_with_degree_sequence, enumerate_up_to_grade, words_of_length, DegreeSequence};
use crate::scalars::{Mode, Polynomial, Scalar};

/// Exponent tuple `(i_0, ..., i_n)` of one series term, with slot `j` distinguished.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    pub indices: Vec<u64>,
    pub j: usize,
}

impl IndexTuple {
    pub fn distinguished(&self) -> u64 {
        self.indices[self.j]
    }

    /// `(1 / (i_{j-1} + 1)) * i_j! / prod_{k != j} i_k!`, computed exactly.
    pub fn weight(&self) -> Rational {
        let mut mult = Integer::from(Integer::factorial(self.distinguished() as u32));
        for (k, &i) in self.indices.iter().enumerate() {
            if k != self.j {
                mult /= Integer::from(Integer::factorial(i as u32));
            }
        }
        Rational::from((mult, Integer::from(self.indices[self.j - 1] + 1)))
    }

    /// Degree sequence of the trees counted by this term: `i_{j-1} + 1` leaves
    /// and `i_k` vertices of letter `1 + k - j` for the other slots.
    pub fn degree_sequence(&self) -> Result<DegreeSequence> {
        let j = self.j as i64;
        DegreeSequence::new(self.indices.iter().enumerate().filter(|&(k, _)| k != self.j).map(|(k, &i)| {
            if k + 1 == self.j {
                (0, i + 1)
            } else {
                (1 + k as i64 - j, i)
            }
        }))
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(u64::to_string).collect();
        write!(f, "({}; j={})", parts.join(","), self.j)
    }
}

/// All tuples over slots `0..=n` with `i_j = ij`, `sum_{k != j} i_k = ij` and
/// `sum_{k != j} k i_k = j ij`, in lexicographic order.
pub fn index_tuples(n: usize, j: usize, ij: u64) -> Result<Vec<IndexTuple>> {
    if j == 0 || j > n {
        return Err(Error::Range(format!("distinguished slot {j} must lie in 1..={n}")));
    }
    let slots: Vec<usize> = (0..=n).filter(|&k| k != j).collect();
    let target = j as u64 * ij;
    let mut out = Vec::new();
    let mut cur = vec![0u64; n + 1];
    cur[j] = ij;
    fill(&slots, 0, ij, target, &mut cur, j, &mut out);
    Ok(out)
}

fn fill(slots: &[usize], pos: usize, rem: u64, deg: u64, cur: &mut [u64], j: usize, out: &mut Vec<IndexTuple>) {
    if pos == slots.len() {
        if rem == 0 && deg == 0 {
            out.push(IndexTuple { indices: cur.to_vec(), j });
        }
        return;
    }
    let k = slots[pos] as u64;
    for v in 0..=rem {
        if k * v > deg {
            break;
        }
        cur[slots[pos]] = v;
        fill(slots, pos + 1, rem - v, deg - k * v, cur, j, out);
    }
    cur[slots[pos]] = 0;
}

fn prepare(p: &Polynomial, m: usize, mode: Mode) -> Result<Polynomial> {
    if m == 0 || m > p.degree() {
        return Err(Error::Range(format!("m = {m} must lie in 1..={}", p.degree())));
    }
    if p.coeff(m as i64).is_zero() {
        return Err(Error::ZeroDenominator(format!("a_{m} = 0")));
    }
    p.to_mode(mode)
}

fn series_grade_of(p: &Polynomial, m: usize, ij: u64) -> Result<Scalar> {
    let mode = p.mode();
    let am = p.coeff(m as i64);
    let lead = p.coeff(m as i64 - 1).try_div(&am.pow_i(ij as i32 + 1)?)?;
    let mut total = Scalar::zero(mode);
    for t in index_tuples(p.degree(), m, ij)? {
        let mut term = Scalar::from_rational(mode, &t.weight()).try_mul(&lead)?;
        if ij % 2 == 1 {
            term = Scalar::zero(mode).try_sub(&term)?;
        }
        for (k, &i) in t.indices.iter().enumerate() {
            if k != m && i > 0 {
                term = term.try_mul(&p.coeff(k as i64).pow_i(i as i32)?)?;
            }
        }
        total = total.try_add(&term)?;
    }
    Scalar::zero(mode).try_sub(&total)
}

/// Negated series terms with distinguished index exactly `ij`.
pub fn series_grade(p: &Polynomial, m: usize, ij: u64, mode: Mode) -> Result<Scalar> {
    series_grade_of(&prepare(p, m, mode)?, m, ij)
}

/// Negated sum of all series terms with distinguished index at most `k`.
pub fn sturmfels_truncation(p: &Polynomial, m: usize, k: u64, mode: Mode) -> Result<Scalar> {
    Ok(series_partial_sums(p, m, k, mode)?.pop().expect("at least grade 0"))
}

/// Cumulative truncations for distinguished index `0..=k`.
pub fn series_partial_sums(p: &Polynomial, m: usize, k: u64, mode: Mode) -> Result<Vec<Scalar>> {
    let q = prepare(p, m, mode)?;
    let mut acc = Scalar::zero(mode);
    let mut out = Vec::with_capacity(k as usize + 1);
    for ij in 0..=k {
        acc = acc.try_add(&series_grade_of(&q, m, ij)?)?;
        out.push(acc.clone());
    }
    Ok(out)
}

fn max_letter(p: &Polynomial, m: usize) -> i64 {
    (p.degree() - m + 1) as i64
}

/// Sum of tree weights over words with exactly `len` letters.
pub fn tree_grade(p: &Polynomial, m: usize, len: usize, mode: Mode) -> Result<Scalar> {
    Ok(tree_grade_split(&prepare(p, m, mode)?, m, len)?.0)
}

/// (all words, words containing at least one 0 letter)
fn tree_grade_split(p: &Polynomial, m: usize, len: usize) -> Result<(Scalar, Scalar)> {
    let mut all = Scalar::zero(p.mode());
    let mut with_leaf = Scalar::zero(p.mode());
    for w in words_of_length(m, max_letter(p, m), len)? {
        let r = w.r_expression(p, m)?;
        if w.letters().contains(&0) {
            with_leaf = with_leaf.try_add(&r)?;
        }
        all = all.try_add(&r)?;
    }
    Ok((all, with_leaf))
}

/// Sum of tree weights over all words of at most `k` letters.
pub fn tree_truncation(p: &Polynomial, m: usize, k: usize, mode: Mode) -> Result<Scalar> {
    let q = prepare(p, m, mode)?;
    let mut acc = Scalar::zero(mode);
    for w in enumerate_up_to_grade(m, max_letter(&q, m), k)? {
        acc = acc.try_add(&w.r_expression(&q, m)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradeComparison {
    /// Letter count of the words; the series side uses index `grade - 1`.
    pub grade: usize,
    pub tree_sum: Scalar,
    pub series_sum: Scalar,
    /// Part of `tree_sum` coming from words with no 0 letter.
    pub zero_free_sum: Scalar,
    pub equal: bool,
    /// `e` with `tree_sum = series_sum * (-a_{m-1}/a_m)^e`, when unequal and one exists.
    pub ratio_exponent: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    AllEqual,
    /// Every grade matches once words without a 0 letter are dropped.
    ZeroFreeWordsOnly,
    /// All unequal grades differ by the same power of `-a_{m-1}/a_m`.
    UniformFactor(i64),
    Unexplained,
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceVerdict::AllEqual => write!(f, "all grades equal"),
            EquivalenceVerdict::ZeroFreeWordsOnly => {
                write!(f, "tree sums exceed the series exactly by the words with no 0 letter")
            }
            EquivalenceVerdict::UniformFactor(e) => write!(f, "uniform factor (-a_(m-1)/a_m)^{e}"),
            EquivalenceVerdict::Unexplained => write!(f, "unexplained discrepancy"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub m: usize,
    pub grades: Vec<GradeComparison>,
    pub verdict: EquivalenceVerdict,
}

impl EquivalenceReport {
    pub fn equal_grades(&self) -> Vec<usize> {
        self.grades.iter().filter(|g| g.equal).map(|g| g.grade).collect()
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "grade  equal  tree  series  zero-free  ratio")?;
        for g in &self.grades {
            let ratio = g.ratio_exponent.map_or("-".to_string(), |e| format!("base^{e}"));
            writeln!(
                f,
                "{}  {}  {}  {}  {}  {}",
                g.grade, g.equal, g.tree_sum, g.series_sum, g.zero_free_sum, ratio
            )?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

fn ratio_exponent(tree: &Scalar, series: &Scalar, base: &Scalar, span: i64) -> Result<Option<i64>> {
    if series.is_zero() || tree.is_zero() || base.is_zero() {
        return Ok(None);
    }
    let ratio = tree.try_div(series)?;
    for e in -span..=span {
        if base.pow_i(e as i32)? == ratio {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Exact grade-by-grade comparison of tree sums and series terms for grades `1..=k`.
pub fn equivalence_report(p: &Polynomial, m: usize, k: usize) -> Result<EquivalenceReport> {
    if !p.mode().is_exact() {
        return Err(Error::MixedVariants("equivalence report needs exact coefficients"));
    }
    let q = prepare(p, m, Mode::Exact)?;
    let base = q.neg_ratio(m as i64 - 1, m)?;
    let mut grades = Vec::with_capacity(k);
    for grade in 1..=k {
        let (tree_sum, with_leaf) = tree_grade_split(&q, m, grade)?;
        let series_sum = series_grade_of(&q, m, grade as u64 - 1)?;
        let zero_free_sum = tree_sum.try_sub(&with_leaf)?;
        let equal = tree_sum == series_sum;
        let ratio_exponent = if equal { None } else { ratio_exponent(&tree_sum, &series_sum, &base, 2 * k as i64)? };
        grades.push(GradeComparison { grade, tree_sum, series_sum, zero_free_sum, equal, ratio_exponent });
    }
    let verdict = if grades.iter().all(|g| g.equal) {
        EquivalenceVerdict::AllEqual
    } else if grades.iter().all(|g| g.tree_sum.try_sub(&g.zero_free_sum).map(|s| s == g.series_sum).unwrap_or(false)) {
        EquivalenceVerdict::ZeroFreeWordsOnly
    } else {
        let exps: Vec<Option<i64>> = grades.iter().filter(|g| !g.equal).map(|g| g.ratio_exponent).collect();
        match exps.first() {
            Some(Some(e)) if exps.iter().all(|x| *x == Some(*e)) => EquivalenceVerdict::UniformFactor(*e),
            _ => EquivalenceVerdict::Unexplained,
        }
    };
    Ok(EquivalenceReport { m, grades, verdict })
}

/// Tuples with `weight != count_with_degree_sequence` among all tuples over
/// slots `0..=n`, distinguished slot `j`, and `i_j <= max_ij`. Also returns
/// the number of tuples checked.
pub fn count_identity_mismatches(n: usize, j: usize, max_ij: u64) -> Result<(usize, Vec<IndexTuple>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ij in 0..=max_ij {
        for t in index_tuples(n, j, ij)? {
            checked += 1;
            let d = t.degree_sequence()?;
            if Rational::from(count_with_degree_sequence(&d)?) != t.weight() {
                bad.push(t);
            }
        }
    }
    Ok((checked, bad))
}
