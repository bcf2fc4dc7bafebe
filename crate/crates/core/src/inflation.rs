//! Inflations, LR-inflations and decompositions.
//!
//! An LR-inflation `α⟨β₁, …, β_k⟩` replaces the `i`-th left-to-right minimum
//! of `α` by a block order-isomorphic to `β_i` and leaves every other entry
//! alone. A permutation is a nontrivial LR-inflation exactly when it has an
//! *LR-block*: a run of at least two and at most `n - 1` consecutive
//! positions whose values are also consecutive, with every earlier entry
//! larger than the whole run. Contracting an LR-block leaves a point that is
//! a left-to-right minimum of the contracted permutation.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{avoids, find_basis_occurrence, rl_maxima, standardize_distinct, Permutation};

/// A skeleton with one subtree per left-to-right minimum.
///
/// A node with no children is a leaf: its minima are inflated by
/// singletons, so its value is the skeleton itself. Otherwise the value is
/// `skeleton⟨value(child₁), …, value(child_k)⟩`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InflationTree {
    skeleton: Permutation,
    children: Vec<InflationTree>,
}

impl InflationTree {
    pub fn leaf(skeleton: Permutation) -> Self {
        InflationTree {
            skeleton,
            children: Vec::new(),
        }
    }

    pub fn node(skeleton: Permutation, children: Vec<InflationTree>) -> Result<Self> {
        let expected = skeleton.lr_minima_count();
        if !children.is_empty() && children.len() != expected {
            return Err(Error::Arity {
                expected,
                got: children.len(),
            });
        }
        Ok(InflationTree { skeleton, children })
    }

    pub fn skeleton(&self) -> &Permutation {
        &self.skeleton
    }

    pub fn children(&self) -> &[InflationTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// The permutation this tree builds.
    pub fn value(&self) -> Permutation {
        if self.is_leaf() {
            return self.skeleton.clone();
        }
        let blocks: Vec<Permutation> = self.children.iter().map(InflationTree::value).collect();
        lr_inflate(&self.skeleton, &blocks).expect("arity checked on construction")
    }

    /// Every skeleton in the tree, preorder.
    pub fn skeletons(&self) -> Vec<&Permutation> {
        let mut out = vec![&self.skeleton];
        for c in &self.children {
            out.extend(c.skeletons());
        }
        out
    }

    /// Checks the arity of every node.
    pub fn validate(&self) -> Result<()> {
        if self.skeleton.is_empty() {
            return Err(Error::Malformed("empty skeleton".into()));
        }
        let expected = self.skeleton.lr_minima_count();
        if !self.children.is_empty() && self.children.len() != expected {
            return Err(Error::Arity {
                expected,
                got: self.children.len(),
            });
        }
        self.children.iter().try_for_each(InflationTree::validate)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tree serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let tree: InflationTree =
            serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        tree.validate()?;
        Ok(tree)
    }
}

/// Consecutive positions `start..=end` holding exactly the values `low..=high`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockInterval {
    pub start: usize,
    pub end: usize,
    pub low: u32,
    pub high: u32,
}

impl BlockInterval {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }

    /// True if `perm` really holds `low..=high` at `start..=end`.
    pub fn is_valid_in(&self, perm: &Permutation) -> bool {
        if self.start == 0 || self.end > perm.len() || self.start > self.end {
            return false;
        }
        let mut vals: Vec<u32> = self.positions().map(|p| perm.at(p)).collect();
        vals.sort_unstable();
        vals.first() == Some(&self.low)
            && vals.last() == Some(&self.high)
            && (self.high - self.low) as usize + 1 == vals.len()
    }

    pub fn content(&self, perm: &Permutation) -> Permutation {
        let positions: Vec<usize> = self.positions().collect();
        perm.pattern_at(&positions)
    }
}

/// `skeleton[blocks₁, …, blocks_n]`.
pub fn inflate(skeleton: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    if blocks.len() != skeleton.len() {
        return Err(Error::Arity {
            expected: skeleton.len(),
            got: blocks.len(),
        });
    }
    if blocks.iter().any(Permutation::is_empty) {
        return Err(Error::InvalidWord("empty block".into()));
    }
    // offset[v] = total size of blocks sitting at skeleton values below v
    let n = skeleton.len();
    let mut size_by_value = vec![0u32; n + 1];
    for (i, b) in blocks.iter().enumerate() {
        size_by_value[skeleton.at(i + 1) as usize] = b.len() as u32;
    }
    let mut offset = vec![0u32; n + 1];
    for v in 2..=n {
        offset[v] = offset[v - 1] + size_by_value[v - 1];
    }
    let mut word = Vec::with_capacity(blocks.iter().map(Permutation::len).sum());
    for (i, b) in blocks.iter().enumerate() {
        let base = offset[skeleton.at(i + 1) as usize];
        word.extend(b.iter().map(|v| v + base));
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// `skeleton⟨blocks₁, …, blocks_k⟩`: one block per left-to-right minimum.
pub fn lr_inflate(skeleton: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    let minima = skeleton.lr_minima();
    if blocks.len() != minima.len() {
        return Err(Error::Arity {
            expected: minima.len(),
            got: blocks.len(),
        });
    }
    let single = Permutation::identity(1);
    let mut full = vec![single; skeleton.len()];
    for (&pos, b) in minima.iter().zip(blocks) {
        full[pos - 1] = b.clone();
    }
    inflate(skeleton, &full)
}

/// LR-blocks starting at `start`, as `(end, low, high)`, in increasing `end`.
fn lr_blocks_from(word: &[u32], start: usize) -> impl Iterator<Item = (usize, u32, u32)> + '_ {
    let n = word.len();
    let before = word[..start].iter().copied().min().unwrap_or(u32::MAX);
    let mut low = word[start];
    let mut high = word[start];
    (start + 1..n).filter_map(move |end| {
        low = low.min(word[end]);
        high = high.max(word[end]);
        let size = end - start + 1;
        let contiguous = (high - low) as usize + 1 == size;
        (contiguous && size < n && before > high).then_some((end, low, high))
    })
}

fn to_interval(start: usize, (end, low, high): (usize, u32, u32)) -> BlockInterval {
    BlockInterval {
        start: start + 1,
        end: end + 1,
        low,
        high,
    }
}

/// The leftmost LR-block, and among those starting there the largest.
pub fn find_lr_block(perm: &Permutation) -> Option<BlockInterval> {
    let word = perm.as_slice();
    (0..word.len()).find_map(|start| {
        lr_blocks_from(word, start)
            .last()
            .map(|b| to_interval(start, b))
    })
}

/// Disjoint LR-blocks chosen greedily from the left, each as large as
/// possible.
pub fn lr_block_cover(perm: &Permutation) -> Vec<BlockInterval> {
    let word = perm.as_slice();
    let mut out = Vec::new();
    let mut start = 0;
    while start < word.len() {
        match lr_blocks_from(word, start).last() {
            Some(b) => {
                out.push(to_interval(start, b));
                start = b.0 + 1;
            }
            None => start += 1,
        }
    }
    out
}

pub fn is_lr_simple(perm: &Permutation) -> bool {
    find_lr_block(perm).is_none()
}

/// No interval of size between 2 and `n - 1`.
pub fn is_simple(perm: &Permutation) -> bool {
    let word = perm.as_slice();
    let n = word.len();
    for start in 0..n {
        let (mut low, mut high) = (word[start], word[start]);
        for (offset, &v) in word[start + 1..].iter().enumerate() {
            low = low.min(v);
            high = high.max(v);
            let size = offset + 2;
            if size < n && (high - low) as usize + 1 == size {
                return false;
            }
        }
    }
    true
}

/// Collapses each of the disjoint `blocks` to one point. Returns the
/// skeleton and, for every skeleton position, the index of the block it came
/// from.
fn contract(perm: &Permutation, blocks: &[BlockInterval]) -> (Permutation, Vec<Option<usize>>) {
    let mut word = Vec::new();
    let mut origin = Vec::new();
    let mut pos = 1;
    let mut next = 0;
    while pos <= perm.len() {
        match blocks.get(next) {
            Some(b) if b.start == pos => {
                word.push(b.low);
                origin.push(Some(next));
                pos = b.end + 1;
                next += 1;
            }
            _ => {
                word.push(perm.at(pos));
                origin.push(None);
                pos += 1;
            }
        }
    }
    (standardize_distinct(&word), origin)
}

/// Feeds `subs` (one entry per left-to-right minimum of `tree.value()`, in
/// order) into the tree's minima.
fn attach(
    tree: InflationTree,
    subs: &mut impl Iterator<Item = Option<InflationTree>>,
) -> InflationTree {
    if !tree.is_leaf() {
        let children = tree.children.into_iter().map(|c| attach(c, subs)).collect();
        return InflationTree {
            skeleton: tree.skeleton,
            children,
        };
    }
    let k = tree.skeleton.lr_minima_count();
    let mut taken: Vec<Option<InflationTree>> = subs.take(k).collect();
    if taken.iter().all(Option::is_none) {
        return tree;
    }
    if tree.skeleton.len() == 1 {
        return taken.pop().flatten().expect("one sub");
    }
    let children = taken
        .into_iter()
        .map(|s| s.unwrap_or_else(|| InflationTree::leaf(Permutation::identity(1))))
        .collect();
    InflationTree {
        skeleton: tree.skeleton,
        children,
    }
}

/// Decides membership in the LR-closure of the class recognised by `base`,
/// returning a tree whose skeletons all satisfy `base` and whose value is
/// `perm`.
///
/// `base` must describe a class (closed under taking patterns). Then any
/// LR-block works: both the contracted skeleton and the block content are
/// patterns of `perm`, so they lie in the closure whenever `perm` does. The
/// blocks used are [`lr_block_cover`]; results are memoized per call.
pub fn lr_closure_member<F>(perm: &Permutation, base: F) -> Option<InflationTree>
where
    F: Fn(&Permutation) -> bool,
{
    let mut memo = HashMap::new();
    closure_tree(perm, &base, &mut memo)
}

fn closure_tree<F>(
    perm: &Permutation,
    base: &F,
    memo: &mut HashMap<Permutation, Option<InflationTree>>,
) -> Option<InflationTree>
where
    F: Fn(&Permutation) -> bool,
{
    if let Some(hit) = memo.get(perm) {
        return hit.clone();
    }
    let result = if base(perm) {
        Some(InflationTree::leaf(perm.clone()))
    } else {
        build_closure_tree(perm, base, memo)
    };
    memo.insert(perm.clone(), result.clone());
    result
}

fn build_closure_tree<F>(
    perm: &Permutation,
    base: &F,
    memo: &mut HashMap<Permutation, Option<InflationTree>>,
) -> Option<InflationTree>
where
    F: Fn(&Permutation) -> bool,
{
    let blocks = lr_block_cover(perm);
    if blocks.is_empty() {
        return None;
    }
    let (skeleton, origin) = contract(perm, &blocks);
    let skeleton_tree = closure_tree(&skeleton, base, memo)?;
    let mut subs = Vec::new();
    for pos in skeleton.lr_minima() {
        match origin[pos - 1] {
            Some(b) => subs.push(Some(closure_tree(&blocks[b].content(perm), base, memo)?)),
            None => subs.push(None),
        }
    }
    debug_assert!(
        origin
            .iter()
            .enumerate()
            .all(|(i, o)| o.is_none() || skeleton.is_lr_minimum(i + 1)),
        "contracted blocks are minima"
    );
    Some(attach(skeleton_tree, &mut subs.into_iter()))
}

fn main_basis() -> [Permutation; 2] {
    [
        Permutation::from_word_unchecked(vec![1, 4, 2, 3]),
        Permutation::from_word_unchecked(vec![1, 3, 4, 2]),
    ]
}

fn av1423_1342_error(perm: &Permutation) -> Error {
    Error::NotInClass {
        perm: perm.clone(),
        class: "Av(1342, 1423)".into(),
        witness: find_basis_occurrence(perm, &main_basis()),
    }
}

/// Splits the entries that are not right-to-left maxima into maximal groups
/// sharing the same gap between consecutive maxima both horizontally and
/// vertically. For `perm ∈ Av(1423, 1342)` the groups are intervals, listed
/// left to right, each lying entirely below the previous one.
pub fn descending_intervals(perm: &Permutation) -> Result<Vec<BlockInterval>> {
    let n = perm.len();
    let maxima = rl_maxima(perm);
    let m = maxima.len();
    // horizontal strips end at maxima positions; vertical bands are cut at
    // maxima values, with sentinels n + 1 above and 0 below
    let mut cut_values: Vec<u32> = Vec::with_capacity(m + 2);
    cut_values.push(n as u32 + 1);
    cut_values.extend(maxima.iter().map(|&i| perm.at(i)));
    cut_values.push(0);

    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut is_max = vec![false; n + 1];
    for &i in &maxima {
        is_max[i] = true;
    }
    for pos in (1..=n).filter(|&pos| !is_max[pos]) {
        let strip = maxima.partition_point(|&i| i < pos) + 1;
        let v = perm.at(pos);
        let band = (1..cut_values.len())
            .find(|&k| cut_values[k] < v && v < cut_values[k - 1])
            .expect("bands cover all values");
        groups.entry((strip, band)).or_default().push(pos);
    }

    let mut out: Vec<BlockInterval> = groups
        .into_values()
        .map(|positions| {
            let vals: Vec<u32> = positions.iter().map(|&p| perm.at(p)).collect();
            BlockInterval {
                start: positions[0],
                end: *positions.last().expect("nonempty"),
                low: *vals.iter().min().expect("nonempty"),
                high: *vals.iter().max().expect("nonempty"),
            }
        })
        .collect();
    out.sort_by_key(|b| b.start);

    let ordered = out
        .windows(2)
        .all(|w| w[0].end < w[1].start && w[0].low > w[1].high);
    if !ordered || !out.iter().all(|b| b.is_valid_in(perm)) {
        return Err(av1423_1342_error(perm));
    }
    Ok(out)
}

/// Writes `perm ∈ Av(1423, 1342)` as repeated LR-inflations of
/// 123-avoiders.
///
/// A 123-avoider is returned as a leaf. Otherwise each interval of
/// [`descending_intervals`] is contracted to a point; together with the
/// right-to-left maxima these points form a skeleton made of two decreasing
/// sequences, hence 123-avoiding, and each interval is decomposed
/// recursively.
pub fn structure_decompose(perm: &Permutation) -> Result<InflationTree> {
    if find_basis_occurrence(perm, &main_basis()).is_some() {
        return Err(av1423_1342_error(perm));
    }
    decompose(perm)
}

fn decompose(perm: &Permutation) -> Result<InflationTree> {
    let pattern_123 = Permutation::identity(3);
    if avoids(perm, std::slice::from_ref(&pattern_123)) {
        return Ok(InflationTree::leaf(perm.clone()));
    }
    let intervals = descending_intervals(perm)?;
    let (skeleton, origin) = contract(perm, &intervals);
    let skeleton_ok = skeleton.len() < perm.len()
        && avoids(&skeleton, std::slice::from_ref(&pattern_123))
        && origin
            .iter()
            .enumerate()
            .all(|(i, o)| o.is_none() || skeleton.is_lr_minimum(i + 1));
    if !skeleton_ok {
        return Err(av1423_1342_error(perm));
    }
    let mut children = Vec::new();
    for pos in skeleton.lr_minima() {
        let child = match origin[pos - 1] {
            Some(b) => decompose(&intervals[b].content(perm))?,
            None => InflationTree::leaf(Permutation::identity(1)),
        };
        children.push(child);
    }
    InflationTree::node(skeleton, children)
}
