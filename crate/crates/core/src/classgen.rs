//! Finitely based classes: enumeration, counting and membership.

use std::fmt;

use crate::error::{Error, Result};
use crate::inflation::lr_closure_member;
use crate::par::Execution;
use crate::perm::{avoids, contains, occurs_ending_at_last, Permutation};

/// `Av(basis)`, or its closure under LR-inflation when `lr_closed` is set.
///
/// The basis is normalized on construction: duplicates and members that
/// contain another member are dropped, and the rest is sorted by length and
/// then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClassSpec {
    basis: Vec<Permutation>,
    lr_closed: bool,
}

impl ClassSpec {
    pub fn new(basis: Vec<Permutation>) -> Result<Self> {
        if basis.iter().any(Permutation::is_empty) {
            return Err(Error::InvalidBasis(
                "basis contains the empty permutation".into(),
            ));
        }
        let mut basis = basis;
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        basis.dedup();
        let mut minimal: Vec<Permutation> = Vec::with_capacity(basis.len());
        for b in basis {
            if !minimal.iter().any(|m| contains(m, &b)) {
                minimal.push(b);
            }
        }
        Ok(ClassSpec {
            basis: minimal,
            lr_closed: false,
        })
    }

    /// Parses each basis element from text, e.g. `ClassSpec::av(&["1423", "1342"])`.
    pub fn av(basis: &[&str]) -> Result<Self> {
        let parsed = basis
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Permutation>>>()?;
        ClassSpec::new(parsed)
    }

    /// The class of all permutations, `Av()`.
    pub fn all() -> Self {
        ClassSpec {
            basis: Vec::new(),
            lr_closed: false,
        }
    }

    /// The LR-closure of this class.
    pub fn lr_closure(mut self) -> Self {
        self.lr_closed = true;
        self
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn is_lr_closed(&self) -> bool {
        self.lr_closed
    }

    /// The plain class with the same basis.
    pub fn base(&self) -> ClassSpec {
        ClassSpec {
            basis: self.basis.clone(),
            lr_closed: false,
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        if self.lr_closed {
            write!(f, "LRcl(Av({}))", parts.join(", "))
        } else {
            write!(f, "Av({})", parts.join(", "))
        }
    }
}

/// Bounds for the operations that fall back to scanning all of `S_n`.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub closure_scan_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure_scan_max_n: 10,
        }
    }
}

/// Depth-first generator of the length-`n` members of `Av(basis)` in
/// lexicographic order.
///
/// Entries are chosen left to right from the unused values, so the output is
/// lexicographic without sorting. A prefix is only extended while it avoids
/// the basis, and since the older prefix already avoided it, only occurrences
/// ending at the newest entry need checking.
pub struct ClassIter<'a> {
    basis: &'a [Permutation],
    n: usize,
    word: Vec<u32>,
    used: Vec<bool>,
    next_value: Vec<u32>,
    first: Option<u32>,
    done: bool,
}

impl<'a> ClassIter<'a> {
    fn new(basis: &'a [Permutation], n: usize, first: Option<u32>) -> Self {
        let mut next_value = vec![1; n + 1];
        next_value[0] = first.unwrap_or(1);
        ClassIter {
            basis,
            n,
            word: Vec::with_capacity(n),
            used: vec![false; n + 1],
            next_value,
            first,
            done: false,
        }
    }

    fn extends(&mut self, v: u32) -> bool {
        self.word.push(v);
        let ok = self
            .basis
            .iter()
            .all(|b| !occurs_ending_at_last(b, &self.word));
        self.word.pop();
        ok
    }
}

impl Iterator for ClassIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let depth = self.word.len();
            if depth == self.n {
                let out = Permutation::from_word_unchecked(self.word.clone());
                let last = self.word.pop().expect("nonempty");
                self.used[last as usize] = false;
                return Some(out);
            }
            let hi = match (depth, self.first) {
                (0, Some(f)) => f,
                _ => self.n as u32,
            };
            let mut found = None;
            let mut v = self.next_value[depth];
            while v <= hi {
                if !self.used[v as usize] && self.extends(v) {
                    found = Some(v);
                    break;
                }
                v += 1;
            }
            match found {
                Some(v) => {
                    self.next_value[depth] = v + 1;
                    self.word.push(v);
                    self.used[v as usize] = true;
                    self.next_value[depth + 1] = 1;
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    let last = self.word.pop().expect("depth > 0");
                    self.used[last as usize] = false;
                }
            }
        }
    }
}

/// Length-`n` members of a plain class, in lexicographic order.
pub fn enumerate_class(spec: &ClassSpec, n: usize) -> Result<ClassIter<'_>> {
    if spec.lr_closed {
        return Err(Error::UnsupportedSpec(format!(
            "enumeration of {spec}; decide membership pointwise instead"
        )));
    }
    Ok(ClassIter::new(&spec.basis, n, None))
}

/// One generator per value of the first entry. Concatenating the shards in
/// order reproduces [`enumerate_class`].
pub fn class_shards(spec: &ClassSpec, n: usize) -> Result<Vec<ClassIter<'_>>> {
    if spec.lr_closed {
        return Err(Error::UnsupportedSpec(format!("enumeration of {spec}")));
    }
    if n == 0 {
        return Ok(vec![ClassIter::new(&spec.basis, 0, None)]);
    }
    Ok((1..=n as u32)
        .map(|f| ClassIter::new(&spec.basis, n, Some(f)))
        .collect())
}

pub fn count_class(spec: &ClassSpec, n: usize) -> Result<u64> {
    count_class_with(spec, n, Limits::default(), Execution::default())
}

/// Plain classes are counted by enumeration. LR-closures are counted by
/// testing every permutation of length `n`, which is bounded by `limits`.
pub fn count_class_with(
    spec: &ClassSpec,
    n: usize,
    limits: Limits,
    exec: Execution,
) -> Result<u64> {
    if !spec.lr_closed {
        let shards = class_shards(spec, n)?;
        return Ok(exec.map(shards, |it| it.count() as u64).into_iter().sum());
    }
    if n > limits.closure_scan_max_n {
        return Err(Error::ResourceLimit {
            what: "closure count length",
            value: n,
            limit: limits.closure_scan_max_n,
        });
    }
    let everything = ClassSpec::all();
    let shards = class_shards(&everything, n)?;
    let counts = exec.map(shards, |it| it.filter(|p| member(spec, p)).count() as u64);
    Ok(counts.into_iter().sum())
}

pub fn member(spec: &ClassSpec, perm: &Permutation) -> bool {
    if spec.lr_closed {
        lr_closure_member(perm, |q| avoids(q, &spec.basis)).is_some()
    } else {
        avoids(perm, &spec.basis)
    }
}
