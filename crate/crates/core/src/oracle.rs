//! Slow reference implementations.
//!
//! Everything here is deliberately naive and shares no helpers with the rest
//! of the crate beyond the [`Permutation`] value type: subsets are generated
//! by bitmask, permutations of length `n` by repeated next-permutation, and
//! LR-closure membership straight from the definition of LR-inflation.
//! These functions exist to cross-check the fast paths.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::classgen::ClassSpec;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const CONTAINS_MAX: usize = 12;
pub const CLASS_MAX: usize = 9;
pub const MERGE_MAX: usize = 12;
pub const AMALGAM_MAX: usize = 9;

fn limit(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::ResourceLimit {
            what,
            value,
            limit: max,
        });
    }
    Ok(())
}

/// Relative order of `vals`, as 1-based ranks.
fn ranks(vals: &[u32]) -> Vec<u32> {
    vals.iter()
        .map(|&v| 1 + vals.iter().filter(|&&w| w < v).count() as u32)
        .collect()
}

fn positions_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn same_order(pattern: &[u32], host: &[u32], positions: &[usize]) -> bool {
    let picked: Vec<u32> = positions.iter().map(|&i| host[i]).collect();
    ranks(&picked) == pattern
}

/// All `n!` words over `1..=n`, in lexicographic order.
pub fn all_words(n: usize) -> Vec<Vec<u32>> {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![word.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| word[j] > word[i - 1])
            .expect("pivot");
        word.swap(i - 1, j);
        word[i..].reverse();
        out.push(word.clone());
    }
}

/// Every permutation of length `n`.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    all_words(n)
        .into_iter()
        .map(|w| Permutation::new(w).expect("valid word"))
        .collect()
}

fn contains_words(pattern: &[u32], host: &[u32]) -> bool {
    let (k, n) = (pattern.len(), host.len());
    if k > n {
        return false;
    }
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|m| same_order(pattern, host, &positions_of(m, n)))
}

/// Tries every index subset of the right size.
pub fn brute_contains(pattern: &Permutation, host: &Permutation) -> Result<bool> {
    limit("brute containment host length", host.len(), CONTAINS_MAX)?;
    Ok(contains_words(pattern.as_slice(), host.as_slice()))
}

/// Every pattern of `host`, including the empty one.
pub fn brute_patterns(host: &Permutation) -> Result<HashSet<Permutation>> {
    limit("brute containment host length", host.len(), CONTAINS_MAX)?;
    let n = host.len();
    Ok((0u32..1 << n)
        .map(|m| {
            let picked: Vec<u32> = positions_of(m, n)
                .iter()
                .map(|&i| host.as_slice()[i])
                .collect();
            Permutation::new(ranks(&picked)).expect("ranks form a permutation")
        })
        .collect())
}

fn brute_avoids(word: &[u32], basis: &[Permutation]) -> bool {
    basis.iter().all(|b| !contains_words(b.as_slice(), word))
}

/// Membership straight from the definitions.
///
/// For an LR-closed spec, a permutation belongs to the closure if it is in
/// the base class, or if contracting some interval of consecutive values to
/// a single left-to-right minimum leaves a member, with the interval itself a
/// member.
pub struct BruteMember<'a> {
    spec: &'a ClassSpec,
    memo: HashMap<Vec<u32>, bool>,
}

impl<'a> BruteMember<'a> {
    pub fn new(spec: &'a ClassSpec) -> Self {
        BruteMember {
            spec,
            memo: HashMap::new(),
        }
    }

    pub fn test(&mut self, word: &[u32]) -> bool {
        if !self.spec.is_lr_closed() {
            return brute_avoids(word, self.spec.basis());
        }
        self.closure(word)
    }

    fn closure(&mut self, word: &[u32]) -> bool {
        if let Some(&known) = self.memo.get(word) {
            return known;
        }
        let answer = brute_avoids(word, self.spec.basis()) || self.some_inflation(word);
        self.memo.insert(word.to_vec(), answer);
        answer
    }

    fn some_inflation(&mut self, word: &[u32]) -> bool {
        let n = word.len();
        for size in 2..n {
            for start in 0..=n - size {
                let block = &word[start..start + size];
                let lo = *block.iter().min().expect("nonempty");
                let hi = *block.iter().max().expect("nonempty");
                if (hi - lo) as usize + 1 != size {
                    continue;
                }
                // contract the block to its first entry
                let mut outer: Vec<u32> = word[..start].to_vec();
                outer.push(lo);
                outer.extend_from_slice(&word[start + size..]);
                let outer = ranks(&outer);
                let point = outer[start];
                if outer[..start].iter().any(|&v| v < point) {
                    continue;
                }
                let inner = ranks(block);
                if self.closure(&outer) && self.closure(&inner) {
                    return true;
                }
            }
        }
        false
    }
}

pub fn brute_member(spec: &ClassSpec, perm: &Permutation) -> bool {
    BruteMember::new(spec).test(perm.as_slice())
}

/// Members of `Av(basis)` of length `n`, by filtering all of `S_n`.
pub fn brute_class(basis: &[Permutation], n: usize) -> Result<BTreeSet<Permutation>> {
    limit("brute class length", n, CLASS_MAX)?;
    Ok(all_words(n)
        .into_iter()
        .filter(|w| brute_avoids(w, basis))
        .map(|w| Permutation::new(w).expect("valid word"))
        .collect())
}

/// Tries all `2^n` red/blue colorings.
pub fn brute_merge(perm: &Permutation, a: &ClassSpec, b: &ClassSpec) -> Result<bool> {
    limit("brute merge length", perm.len(), MERGE_MAX)?;
    let n = perm.len();
    let word = perm.as_slice();
    let mut in_a = BruteMember::new(a);
    let mut in_b = BruteMember::new(b);
    for mask in 0u32..1 << n {
        let red: Vec<u32> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| word[i])
            .collect();
        let blue: Vec<u32> = (0..n)
            .filter(|&i| mask & (1 << i) == 0)
            .map(|i| word[i])
            .collect();
        if in_a.test(&ranks(&red)) && in_b.test(&ranks(&blue)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Length of the shortest 1-amalgam of `(p1, mark1)` and `(p2, mark2)` in
/// `spec`, searching lengths up to `max_len`. Marks are 1-based.
pub fn brute_min_amalgam(
    p1: &Permutation,
    mark1: usize,
    p2: &Permutation,
    mark2: usize,
    spec: &ClassSpec,
    max_len: usize,
) -> Result<Option<usize>> {
    limit("brute amalgam length", max_len, AMALGAM_MAX)?;
    let (a, b) = (p1.as_slice(), p2.as_slice());
    let mut member = BruteMember::new(spec);
    for len in a.len().max(b.len())..=max_len {
        for host in all_words(len) {
            if !member.test(&host) {
                continue;
            }
            let marks = |pattern: &[u32], mark: usize| -> HashSet<usize> {
                (0u32..1 << len)
                    .filter(|m| m.count_ones() as usize == pattern.len())
                    .map(|m| positions_of(m, len))
                    .filter(|pos| same_order(pattern, &host, pos))
                    .map(|pos| pos[mark - 1])
                    .collect()
            };
            if !marks(a, mark1).is_disjoint(&marks(b, mark2)) {
                return Ok(Some(len));
            }
        }
    }
    Ok(None)
}
