use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Integer;

use crate::error::{Error, Result};

/// Letter multiset of a word: degree `k` (never 1) to count `d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    counts: BTreeMap<i64, u64>,
}

impl DegreeSequence {
    /// Zero counts are dropped; a nonzero count at degree 1 is rejected.
    pub fn new(counts: impl IntoIterator<Item = (i64, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, n) in counts {
            if n == 0 {
                continue;
            }
            if k == 1 {
                return Err(Error::DegreeOne);
            }
            *map.entry(k).or_insert(0) += n;
        }
        Ok(DegreeSequence { counts: map })
    }

    pub(crate) fn tally(letters: &[i64]) -> Self {
        let mut counts = BTreeMap::new();
        for &l in letters {
            *counts.entry(l).or_insert(0) += 1;
        }
        DegreeSequence { counts }
    }

    pub fn get(&self, k: i64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `(degree, count)` pairs in ascending degree, nonzero counts only.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&k, &n)| (k, n))
    }

    /// Total number of letters `N`.
    pub fn letters(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum (k - 1) d_k`; -1 for the degree sequence of a valid word.
    pub fn excess(&self) -> i64 {
        self.counts.iter().map(|(&k, &n)| (k - 1) * n as i64).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.excess() == -1
    }

    /// The letters in ascending order, each repeated by its count.
    pub fn sorted_letters(&self) -> Vec<i64> {
        self.counts.iter().flat_map(|(&k, &n)| std::iter::repeat(k).take(n as usize)).collect()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `"k:count,k:count,..."`, e.g. `"-1:1,0:1,2:2"`.
impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse { text: s.to_string(), reason: reason.to_string() };
        let mut pairs = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, n) = part.split_once(':').ok_or_else(|| bad("expected degree:count"))?;
            let k: i64 = k.trim().parse().map_err(|_| bad("degree is not an integer"))?;
            let n: u64 = n.trim().parse().map_err(|_| bad("count is not a non-negative integer"))?;
            pairs.push((k, n));
        }
        if pairs.is_empty() {
            return Err(bad("empty degree sequence"));
        }
        DegreeSequence::new(pairs)
    }
}

/// Number of valid words with letter multiset `d`: `(N - 1)! / prod d_k!`.
pub fn count_with_degree_sequence(d: &DegreeSequence) -> Result<Integer> {
    let excess = d.excess();
    if excess != -1 {
        return Err(Error::IncompleteSequence(excess));
    }
    let n = d.letters();
    let mut num = Integer::from(Integer::factorial((n - 1) as u32));
    for (_, c) in d.iter() {
        num /= Integer::from(Integer::factorial(c as u32));
    }
    Ok(num)
}
