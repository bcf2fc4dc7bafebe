//! Permutations, embeddings and pattern containment.
//!
//! Values and positions are 1-based everywhere in the public surface: a
//! permutation of length `n` is a word over `1..=n`, and position `1` is its
//! first entry. Internally the slices are 0-based; the conversions happen at
//! the edges of this module.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored in one-line notation.
///
/// The empty permutation (`n = 0`) is a valid value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `word` is a rearrangement of `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidWord(format!("{word:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { word })
    }

    /// Skips validation. Callers guarantee the word is a permutation.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok(), "{word:?}");
        Permutation { word }
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// Value at 1-based `position`.
    pub fn at(&self, position: usize) -> u32 {
        self.word[position - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.word.iter().copied()
    }

    /// The subsequence at the given 1-based positions, standardized.
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        let sub: Vec<u32> = positions.iter().map(|&p| self.word[p - 1]).collect();
        standardize_distinct(&sub)
    }

    /// 1-based positions of left-to-right minima, in increasing order.
    pub fn lr_minima(&self) -> Vec<usize> {
        lr_minima(self)
    }

    pub fn lr_minima_count(&self) -> usize {
        let mut min = u32::MAX;
        self.word
            .iter()
            .filter(|&&v| {
                let hit = v < min;
                min = min.min(v);
                hit
            })
            .count()
    }

    pub fn is_lr_minimum(&self, position: usize) -> bool {
        let v = self.word[position - 1];
        self.word[..position - 1].iter().all(|&u| u > v)
    }

    pub fn reverse(&self) -> Permutation {
        Permutation {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.word.len() as u32;
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word }
    }

    /// Space-separated decimal form, e.g. `"4 3 5 8 2 1 6 7"`.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }

    /// Compact digit form, e.g. `"43582167"`. Only meaningful for `n <= 9`.
    pub fn to_compact(&self) -> Option<String> {
        if self.word.len() > 9 {
            return None;
        }
        Some(self.word.iter().map(|v| v.to_string()).collect())
    }
}

impl fmt::Display for Permutation {
    /// Compact digits for `n <= 9`, space-separated above that. The empty
    /// permutation prints as an empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_spaced()),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_spaced())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"4 3 5 8 2 1 6 7"` (also with commas) or the compact
    /// `"43582167"` when the permutation has at most nine entries.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let word: Vec<u32> = if separated {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidWord(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::InvalidWord(s.to_string()))?
        };
        Permutation::new(word).map_err(|_| Error::InvalidWord(s.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The unique permutation order-isomorphic to `word`.
pub fn standardize<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidWord("duplicate entries".into()));
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation { word: out })
}

pub(crate) fn standardize_distinct(word: &[u32]) -> Permutation {
    standardize(word).expect("entries are distinct")
}

/// A strictly increasing map from pattern positions to host positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Embedding {
    indices: Vec<usize>,
    host_len: usize,
}

impl Embedding {
    pub fn new(indices: Vec<usize>, host_len: usize) -> Result<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = indices.iter().all(|&i| i >= 1 && i <= host_len);
        if !increasing || !in_range {
            return Err(Error::Malformed(format!(
                "embedding {indices:?} into length {host_len}"
            )));
        }
        Ok(Embedding { indices, host_len })
    }

    /// 1-based host positions, one per pattern position.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn pattern_len(&self) -> usize {
        self.indices.len()
    }

    pub fn host_len(&self) -> usize {
        self.host_len
    }

    /// Host position of 1-based pattern position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.indices[i - 1]
    }

    /// True if the host entries at these positions are order-isomorphic to
    /// `pattern`.
    pub fn witnesses(&self, pattern: &Permutation, host: &Permutation) -> bool {
        if pattern.len() != self.indices.len() || host.len() != self.host_len {
            return false;
        }
        let sub: Vec<u32> = self.indices.iter().map(|&i| host.at(i)).collect();
        standardize_distinct(&sub) == *pattern
    }

    /// The same occurrence seen in the reversed host.
    pub fn reverse(&self) -> Embedding {
        Embedding {
            indices: self
                .indices
                .iter()
                .rev()
                .map(|&i| self.host_len + 1 - i)
                .collect(),
            host_len: self.host_len,
        }
    }
}

/// For each pattern index `k`, the earlier indices holding the nearest
/// smaller and nearest larger values. An occurrence only has to respect these
/// two neighbours at every step to be order-isomorphic overall.
struct Plan {
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Plan {
    fn new(pattern: &[u32]) -> Self {
        let k = pattern.len();
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for j in 0..k {
            let v = pattern[j];
            let lo = (0..j)
                .filter(|&i| pattern[i] < v)
                .max_by_key(|&i| pattern[i]);
            let hi = (0..j)
                .filter(|&i| pattern[i] > v)
                .min_by_key(|&i| pattern[i]);
            below.push(lo);
            above.push(hi);
        }
        Plan { below, above }
    }
}

/// Lexicographic depth-first enumeration of occurrences.
pub struct Embeddings<'a> {
    plan: Plan,
    host: &'a [u32],
    chosen: Vec<usize>,
    last_fixed: bool,
    started: bool,
    done: bool,
}

impl<'a> Embeddings<'a> {
    fn over(pattern: &[u32], host: &'a [u32], last_fixed: bool) -> Self {
        let done = pattern.len() > host.len() || (last_fixed && pattern.is_empty());
        Embeddings {
            plan: Plan::new(pattern),
            host,
            chosen: Vec::with_capacity(pattern.len()),
            last_fixed,
            started: false,
            done,
        }
    }

    fn fits(&self, depth: usize, i: usize) -> bool {
        let v = self.host[i];
        if let Some(lo) = self.plan.below[depth] {
            if v < self.host[self.chosen[lo]] {
                return false;
            }
        }
        if let Some(hi) = self.plan.above[depth] {
            if v > self.host[self.chosen[hi]] {
                return false;
            }
        }
        true
    }

    /// Advances to the next full occurrence; returns false when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let k = self.plan.below.len();
        let n = self.host.len();
        if k == 0 {
            self.done = true;
            return true;
        }
        let mut start = if self.started {
            self.chosen.pop().map_or(0, |i| i + 1)
        } else {
            self.started = true;
            0
        };
        loop {
            let depth = self.chosen.len();
            let (from, to) = if self.last_fixed && depth + 1 == k {
                (start.max(n - 1), n)
            } else {
                (start, n + depth + 1 - k)
            };
            match (from..to).find(|&i| self.fits(depth, i)) {
                Some(i) => {
                    self.chosen.push(i);
                    if self.chosen.len() == k {
                        return true;
                    }
                    start = i + 1;
                }
                None => match self.chosen.pop() {
                    Some(prev) => start = prev + 1,
                    None => {
                        self.done = true;
                        return false;
                    }
                },
            }
        }
    }
}

impl Iterator for Embeddings<'_> {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.advance() {
            Some(Embedding {
                indices: self.chosen.iter().map(|&i| i + 1).collect(),
                host_len: self.host.len(),
            })
        } else {
            None
        }
    }
}

/// Every occurrence of `pattern` in `host`, in lexicographic order of index
/// tuples.
pub fn embeddings<'a>(pattern: &Permutation, host: &'a Permutation) -> Embeddings<'a> {
    Embeddings::over(pattern.as_slice(), host.as_slice(), false)
}

/// The lexicographically least occurrence of `pattern` in `host`.
pub fn find_embedding(pattern: &Permutation, host: &Permutation) -> Option<Embedding> {
    embeddings(pattern, host).next()
}

pub fn contains(pattern: &Permutation, host: &Permutation) -> bool {
    contains_in_word(pattern, host.as_slice())
}

/// Containment in any word of distinct values; the word need not be
/// standardized.
pub(crate) fn contains_in_word(pattern: &Permutation, word: &[u32]) -> bool {
    Embeddings::over(pattern.as_slice(), word, false).advance()
}

/// Whether `pattern` occurs in `word` using the last entry of `word`.
pub(crate) fn occurs_ending_at_last(pattern: &Permutation, word: &[u32]) -> bool {
    Embeddings::over(pattern.as_slice(), word, true).advance()
}

pub fn avoids(host: &Permutation, basis: &[Permutation]) -> bool {
    basis.iter().all(|b| !contains(b, host))
}

/// First basis element (in the given order) contained in `host`, with its
/// least occurrence.
pub fn find_basis_occurrence(
    host: &Permutation,
    basis: &[Permutation],
) -> Option<(Permutation, Embedding)> {
    basis
        .iter()
        .find_map(|b| find_embedding(b, host).map(|e| (b.clone(), e)))
}

/// 1-based positions of the left-to-right minima.
pub fn lr_minima(perm: &Permutation) -> Vec<usize> {
    let mut min = u32::MAX;
    let mut out = Vec::new();
    for (i, &v) in perm.as_slice().iter().enumerate() {
        if v < min {
            min = v;
            out.push(i + 1);
        }
    }
    out
}

/// 1-based positions of the right-to-left maxima, in increasing order.
pub fn rl_maxima(perm: &Permutation) -> Vec<usize> {
    let mut max = 0;
    let mut out = Vec::new();
    for (i, &v) in perm.as_slice().iter().enumerate().rev() {
        if v > max {
            max = v;
            out.push(i + 1);
        }
    }
    out.reverse();
    out
}

/// Whether the entry at position `i` covers the one at `j`: it comes first
/// and is smaller.
pub fn covers(perm: &Permutation, i: usize, j: usize) -> Result<bool> {
    let n = perm.len();
    for p in [i, j] {
        if p == 0 || p > n {
            return Err(Error::Index {
                position: p,
                len: n,
            });
        }
    }
    Ok(i < j && perm.at(i) < perm.at(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[3, 10, 7]).unwrap(), p("132"));
        assert_eq!(standardize(&[5]).unwrap(), p("1"));
        assert_eq!(
            standardize(&[4, 3, 5, 8, 2, 1, 6, 7]).unwrap(),
            p("43582167")
        );
        assert!(matches!(
            standardize(&[1, 2, 1]),
            Err(Error::InvalidWord(_))
        ));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("4 3 5 8 2 1 6 7"), p("43582167"));
        assert_eq!(p("10 9 8 7 6 5 4 3 2 1"), Permutation::decreasing(10));
        assert_eq!(p(""), Permutation::empty());
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
        assert_eq!(
            Permutation::decreasing(10).to_string(),
            "10 9 8 7 6 5 4 3 2 1"
        );
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&p("2413"), &p("43582167")));
        assert!(!contains(&p("123"), &p("796385412")));
        assert!(contains(&Permutation::empty(), &Permutation::empty()));
        for host in ["1", "21", "796385412"] {
            assert!(contains(&p("1"), &p(host)));
        }
    }

    #[test]
    fn embedding_streams() {
        let all: Vec<Vec<usize>> = embeddings(&p("12"), &p("123"))
            .map(|e| e.indices().to_vec())
            .collect();
        assert_eq!(all, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(embeddings(&p("21"), &p("12")).count(), 0);
        assert_eq!(embeddings(&Permutation::empty(), &p("12")).count(), 1);
    }

    #[test]
    fn least_witness() {
        let e = find_embedding(&p("2413"), &p("43582167")).unwrap();
        assert!(e.witnesses(&p("2413"), &p("43582167")));
        assert_eq!(e, embeddings(&p("2413"), &p("43582167")).next().unwrap());
    }

    #[test]
    fn avoidance_examples() {
        let basis = [p("1423"), p("1342")];
        assert!(avoids(&p("463152"), &basis));
        assert!(!avoids(&p("1423"), &[p("1423")]));
        assert!(avoids(&Permutation::empty(), &basis));
    }

    #[test]
    fn lr_minima_and_rl_maxima() {
        assert_eq!(lr_minima(&p("2413")), vec![1, 3]);
        let q = p("796385412");
        let pos = lr_minima(&q);
        assert_eq!(pos, vec![1, 3, 4, 8]);
        let vals: Vec<u32> = pos.iter().map(|&i| q.at(i)).collect();
        assert_eq!(vals, vec![7, 6, 3, 1]);
        assert_eq!(rl_maxima(&Permutation::identity(6)), vec![6]);
        assert_eq!(rl_maxima(&Permutation::decreasing(4)), vec![1, 2, 3, 4]);
        assert_eq!(rl_maxima(&p("2413")), vec![2, 4]);
        assert_eq!(q.lr_minima_count(), 4);
    }

    #[test]
    fn covering() {
        let q = p("796385412");
        assert!(covers(&q, 1, 2).unwrap());
        assert!(covers(&q, 4, 6).unwrap());
        assert!(!covers(&p("21"), 1, 2).unwrap());
        assert!(!covers(&q, 2, 1).unwrap());
        assert_eq!(
            covers(&p("21"), 1, 3),
            Err(Error::Index {
                position: 3,
                len: 2
            })
        );
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("1423").reverse(), p("3241"));
        assert_eq!(p("1423").complement(), p("4132"));
        assert_eq!(p("1342").reverse(), p("2431"));
        assert_eq!(p("1342").complement(), p("4213"));
        assert_eq!(p("1423").reverse().complement(), p("2314"));
        assert_eq!(p("1342").reverse().complement(), p("3124"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("2413").inverse(), p("3142"));
    }

    #[test]
    fn ending_at_last() {
        assert!(occurs_ending_at_last(&p("12"), &[1, 3, 2]));
        assert!(!occurs_ending_at_last(&p("12"), &[2, 3, 1]));
        assert!(!occurs_ending_at_last(&p("123"), &[1, 2]));
    }
}
