//! Generalized Łukasiewicz words: trees whose vertices may have negative degree.
//!
//! A word `l_1..l_N` is valid when no letter equals 1, every proper prefix of
//! `(l_i - 1)` sums to at least 0 and the whole word sums to -1. A letter
//! `-h < 0` is a vertex that cancels the `h` leaves immediately before it in
//! preorder; expanding it into `h + 1` zeros gives an ordinary plane tree.

mod count;
mod enumerate;
mod tree;

pub use count::{count_with_degree_sequence, DegreeSequence};
pub use enumerate::{
    enumerate_by_conjugation, enumerate_by_degree_sequence, enumerate_by_degree_sequence_with,
    enumerate_up_to_grade, enumerate_up_to_grade_with, words_of_length, WordIter, DEFAULT_DEGREE_SEQUENCE_CAP,
    DEFAULT_GRADE_CAP,
};
pub use tree::PlaneTree;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLukWord {
    letters: Vec<i64>,
}

/// Type number of a tree together with its "final" flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeNumber {
    pub value: usize,
    pub is_final: bool,
}

/// Which class of the terminal partition a word falls in for a given `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminalClass {
    /// The one-leaf tree `[0]`, kept apart from every class.
    SingleLeaf,
    /// Class `i`, `0 <= i <= m - 1`.
    Class(usize),
}

pub fn validate_word(letters: &[i64]) -> Result<GenLukWord> {
    GenLukWord::new(letters.to_vec())
}

impl GenLukWord {
    /// Checks the three validity conditions; errors carry the 0-based index
    /// of the first offending letter.
    pub fn new(letters: Vec<i64>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord { index: 0, reason: "empty word".into() });
        }
        let last = letters.len() - 1;
        let mut sum = 0i64;
        for (i, &l) in letters.iter().enumerate() {
            if l == 1 {
                return Err(Error::InvalidWord { index: i, reason: "letter 1 is not allowed".into() });
            }
            sum += l - 1;
            if i < last && sum < 0 {
                return Err(Error::InvalidWord {
                    index: i,
                    reason: format!("prefix sum {sum} is negative before the end"),
                });
            }
        }
        if sum != -1 {
            return Err(Error::InvalidWord { index: last, reason: format!("total sum {sum} is not -1") });
        }
        Ok(GenLukWord { letters })
    }

    /// The one-leaf tree.
    pub fn leaf() -> Self {
        GenLukWord { letters: vec![0] }
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Number of letters, which is also the grade of the tree.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_degree(&self) -> i64 {
        *self.letters.iter().min().expect("valid words are non-empty")
    }

    /// Membership in `Luk_m`: every letter is at least `1 - m`.
    pub fn in_luk(&self, m: usize) -> bool {
        self.min_degree() >= 1 - m as i64
    }

    /// The classical word `U(l)`: each negative letter `l` becomes `|l| + 1` zeros.
    pub fn expand(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l < 0 {
                out.extend(std::iter::repeat(0).take(l.unsigned_abs() as usize + 1));
            } else {
                out.push(l);
            }
        }
        out
    }

    /// Type number of the expanded tree, computed bottom-up right to left.
    pub fn type_number(&self) -> TypeNumber {
        let mut stack: Vec<TypeNumber> = Vec::new();
        for &l in self.expand().iter().rev() {
            let children = l as usize;
            if children == 0 {
                stack.push(TypeNumber { value: 0, is_final: false });
                continue;
            }
            let start = stack.len() - children;
            let best = stack[start..].iter().map(|t| t.value).max().unwrap_or(0);
            let hits = stack[start..].iter().filter(|t| t.value == best).count();
            stack.truncate(start);
            stack.push(if hits >= 2 {
                TypeNumber { value: best + 1, is_final: true }
            } else {
                TypeNumber { value: best, is_final: false }
            });
        }
        debug_assert_eq!(stack.len(), 1);
        stack[0]
    }

    /// Trailing zero letters of the word itself (not of its expansion).
    pub fn terminal(&self) -> usize {
        self.letters.iter().rev().take_while(|&&l| l == 0).count()
    }

    pub fn terminal_class(&self, m: usize) -> TerminalClass {
        if self.letters == [0] {
            return TerminalClass::SingleLeaf;
        }
        match self.terminal() {
            0 => TerminalClass::Class(0),
            t => TerminalClass::Class(t.min(m.saturating_sub(1))),
        }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::tally(&self.letters)
    }

    /// `prod (-a_{m+l-1} / a_m)` over the letters `l`.
    pub fn r_expression(&self, p: &Polynomial, m: usize) -> Result<Scalar> {
        let mut acc = Scalar::one(p.mode());
        for (k, n) in self.degree_sequence().iter() {
            let factor = p.neg_ratio(m as i64 + k - 1, m)?;
            acc = acc.try_mul(&factor.pow_i(n as i32)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GenLukWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
