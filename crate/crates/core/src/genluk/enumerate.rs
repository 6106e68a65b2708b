//! Exhaustive word enumeration.
//!
//! Both enumerators walk letters depth-first in ascending order, so output is
//! lexicographic. Valid words are prefix-free, which makes depth-first order
//! and lexicographic order coincide.

use std::collections::BTreeMap;

use super::count::DegreeSequence;
use super::GenLukWord;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_SEQUENCE_CAP: usize = 12;
pub const DEFAULT_GRADE_CAP: usize = 14;

/// Lazy depth-first enumeration of valid words of one fixed length.
#[derive(Clone, Debug)]
pub struct WordIter {
    alphabet: Vec<i64>,
    /// Per-letter budget when enumerating a fixed multiset.
    budget: Option<Vec<u64>>,
    len: usize,
    min_step: i64,
    max_step: i64,
    choices: Vec<usize>,
    sums: Vec<i64>,
    resume: usize,
    done: bool,
}

impl WordIter {
    fn new(alphabet: Vec<i64>, budget: Option<Vec<u64>>, len: usize) -> Self {
        let min_step = alphabet.iter().min().map_or(0, |l| l - 1);
        let max_step = alphabet.iter().max().map_or(0, |l| l - 1);
        WordIter {
            done: alphabet.is_empty() || len == 0,
            alphabet,
            budget,
            len,
            min_step,
            max_step,
            choices: Vec::with_capacity(len),
            sums: Vec::with_capacity(len),
            resume: 0,
        }
    }

    fn fits(&self, letter_index: usize) -> Option<i64> {
        if let Some(b) = &self.budget {
            if b[letter_index] == 0 {
                return None;
            }
        }
        let sum = self.sums.last().copied().unwrap_or(0) + self.alphabet[letter_index] - 1;
        let left = (self.len - self.choices.len() - 1) as i64;
        let ok = if left == 0 {
            sum == -1
        } else if self.budget.is_some() {
            // the multiset fixes the final total
            sum >= 0
        } else {
            sum >= 0 && sum + left * self.min_step <= -1 && sum + left * self.max_step >= -1
        };
        ok.then_some(sum)
    }

    fn pop(&mut self) {
        let i = self.choices.pop().expect("pop on empty prefix");
        self.sums.pop();
        if let Some(b) = &mut self.budget {
            b[i] += 1;
        }
        self.resume = i + 1;
    }
}

impl Iterator for WordIter {
    type Item = GenLukWord;

    fn next(&mut self) -> Option<GenLukWord> {
        while !self.done {
            let placed = (self.resume..self.alphabet.len()).find_map(|i| self.fits(i).map(|s| (i, s)));
            match placed {
                Some((i, sum)) => {
                    self.choices.push(i);
                    self.sums.push(sum);
                    if let Some(b) = &mut self.budget {
                        b[i] -= 1;
                    }
                    self.resume = 0;
                    if self.choices.len() == self.len {
                        let letters = self.choices.iter().map(|&i| self.alphabet[i]).collect();
                        self.pop();
                        return Some(GenLukWord { letters });
                    }
                }
                None if self.choices.is_empty() => self.done = true,
                None => self.pop(),
            }
        }
        None
    }
}

pub fn enumerate_by_degree_sequence(d: &DegreeSequence) -> Result<WordIter> {
    enumerate_by_degree_sequence_with(d, DEFAULT_DEGREE_SEQUENCE_CAP)
}

/// All valid words with letter multiset `d`, in lexicographic order.
pub fn enumerate_by_degree_sequence_with(d: &DegreeSequence, cap: usize) -> Result<WordIter> {
    let excess = d.excess();
    if excess != -1 {
        return Err(Error::IncompleteSequence(excess));
    }
    let n = d.letters() as usize;
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let (alphabet, budget): (Vec<i64>, Vec<u64>) = d.iter().unzip();
    Ok(WordIter::new(alphabet, Some(budget), n))
}

/// Independent generator built on conjugation: every arrangement of the
/// letters has exactly one cyclic rotation that is a valid word, namely the
/// one starting at the first minimum of its prefix sums. Rotating all
/// arrangements and removing duplicates yields each word `N` times before
/// deduplication; the function checks that multiplicity and returns the
/// words sorted.
pub fn enumerate_by_conjugation(d: &DegreeSequence, cap: usize) -> Result<Vec<GenLukWord>> {
    let excess = d.excess();
    if excess != -1 {
        return Err(Error::IncompleteSequence(excess));
    }
    let n = d.letters() as usize;
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut arrangement = d.sorted_letters();
    loop {
        *seen.entry(valid_rotation(&arrangement)).or_insert(0) += 1;
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    seen.into_iter()
        .map(|(letters, hits)| {
            if hits != n {
                return Err(Error::Range(format!(
                    "conjugacy class of size {hits} instead of {n}"
                )));
            }
            GenLukWord::new(letters)
        })
        .collect()
}

fn valid_rotation(letters: &[i64]) -> Vec<i64> {
    let mut sum = 0;
    let mut best = (0, 0);
    for (i, l) in letters.iter().enumerate() {
        if sum < best.0 {
            best = (sum, i);
        }
        sum += l - 1;
    }
    let mut out = letters.to_vec();
    out.rotate_left(best.1);
    out
}

/// Next lexicographic permutation of a multiset; false after the last one.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_up_to_grade(
    m: usize,
    max_letter: i64,
    grade: usize,
) -> Result<impl Iterator<Item = GenLukWord>> {
    enumerate_up_to_grade_with(m, max_letter, grade, DEFAULT_GRADE_CAP)
}

/// Valid words of exactly `len` letters drawn from `[1 - m, max_letter]`.
pub fn words_of_length(m: usize, max_letter: i64, len: usize) -> Result<WordIter> {
    if m == 0 {
        return Err(Error::Range("m must be at least 1".into()));
    }
    let alphabet: Vec<i64> = (1 - m as i64..=max_letter).filter(|&l| l != 1).collect();
    Ok(WordIter::new(alphabet, None, len))
}

/// All valid words with letters in `[1 - m, max_letter]` and at most `grade`
/// letters, shortest first and lexicographic within a length.
pub fn enumerate_up_to_grade_with(
    m: usize,
    max_letter: i64,
    grade: usize,
    cap: usize,
) -> Result<impl Iterator<Item = GenLukWord>> {
    if m == 0 {
        return Err(Error::Range("m must be at least 1".into()));
    }
    if grade > cap {
        return Err(Error::CapExceeded { requested: grade, cap });
    }
    Ok((1..=grade).flat_map(move |n| words_of_length(m, max_letter, n).expect("m checked above")))
}
