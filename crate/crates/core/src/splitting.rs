//! Merges, LR-merges and the splitting constructions.

use std::collections::HashMap;
use std::fmt;

use serde_json::json;

use crate::classgen::{member, ClassSpec};
use crate::error::{Error, Result};
use crate::inflation::{structure_decompose, InflationTree};
use crate::perm::{find_embedding, occurs_ending_at_last, standardize_distinct, Permutation};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Color {
    Red,
    Blue,
    /// Shared by both parts; only left-to-right minima in an LR-merge.
    Both,
}

impl Color {
    pub fn symbol(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Both => '*',
        }
    }

    pub fn from_symbol(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            '*' => Some(Color::Both),
            _ => None,
        }
    }

    fn is_red(self) -> bool {
        matches!(self, Color::Red | Color::Both)
    }

    fn is_blue(self) -> bool {
        matches!(self, Color::Blue | Color::Both)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MergeMode {
    Merge,
    LrMerge,
}

impl MergeMode {
    fn as_str(self) -> &'static str {
        match self {
            MergeMode::Merge => "merge",
            MergeMode::LrMerge => "lr_merge",
        }
    }
}

/// A red/blue coloring of a host permutation's positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoColoring {
    colors: Vec<Color>,
    mode: MergeMode,
}

impl TwoColoring {
    pub fn new(colors: Vec<Color>, mode: MergeMode) -> Result<Self> {
        if mode == MergeMode::Merge && colors.contains(&Color::Both) {
            return Err(Error::Malformed("shared positions in a plain merge".into()));
        }
        Ok(TwoColoring { colors, mode })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn mode(&self) -> MergeMode {
        self.mode
    }

    /// Checks the coloring against its host: lengths agree and, for an
    /// LR-merge, the shared positions are exactly the left-to-right minima.
    pub fn validate(&self, host: &Permutation) -> Result<()> {
        if self.colors.len() != host.len() {
            return Err(Error::Malformed(format!(
                "{} colors for a host of length {}",
                self.colors.len(),
                host.len()
            )));
        }
        if self.mode == MergeMode::LrMerge {
            let mut shared = vec![false; host.len()];
            for p in host.lr_minima() {
                shared[p - 1] = true;
            }
            let ok = self
                .colors
                .iter()
                .zip(&shared)
                .all(|(&c, &s)| (c == Color::Both) == s);
            if !ok {
                return Err(Error::Malformed(
                    "shared positions differ from the left-to-right minima".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn red_positions(&self) -> Vec<usize> {
        self.positions(Color::is_red)
    }

    pub fn blue_positions(&self) -> Vec<usize> {
        self.positions(Color::is_blue)
    }

    fn positions(&self, keep: fn(Color) -> bool) -> Vec<usize> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| keep(c))
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn red_part(&self, host: &Permutation) -> Permutation {
        host.pattern_at(&self.red_positions())
    }

    pub fn blue_part(&self, host: &Permutation) -> Permutation {
        host.pattern_at(&self.blue_positions())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let colors: String = self.colors.iter().map(|c| c.symbol()).collect();
        json!({ "mode": self.mode.as_str(), "colors": colors })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let mode = match value.get("mode").and_then(|m| m.as_str()) {
            Some("merge") => MergeMode::Merge,
            Some("lr_merge") => MergeMode::LrMerge,
            other => return Err(Error::Malformed(format!("mode {other:?}"))),
        };
        let colors = value
            .get("colors")
            .and_then(|c| c.as_str())
            .ok_or_else(|| Error::Malformed("missing colors".into()))?
            .chars()
            .map(Color::from_symbol)
            .collect::<Option<Vec<Color>>>()
            .ok_or_else(|| Error::Malformed("unknown color symbol".into()))?;
        TwoColoring::new(colors, mode)
    }
}

impl fmt::Display for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

/// Checks that `coloring` witnesses `host ∈ a ⊙ b` (or `a ⊙LR b`).
pub fn certifies(
    host: &Permutation,
    coloring: &TwoColoring,
    a: &ClassSpec,
    b: &ClassSpec,
) -> Result<()> {
    coloring.validate(host)?;
    let red = coloring.red_part(host);
    if !member(a, &red) {
        return Err(Error::NotInClass {
            perm: red,
            class: a.to_string(),
            witness: None,
        });
    }
    let blue = coloring.blue_part(host);
    if !member(b, &blue) {
        return Err(Error::NotInClass {
            perm: blue,
            class: b.to_string(),
            witness: None,
        });
    }
    Ok(())
}

/// Incremental membership of a growing subsequence. Every extension is
/// tested right after the new entry is appended; earlier prefixes were
/// already accepted, and classes are closed under patterns, so a rejected
/// prefix can never be completed.
struct PartGuard<'a> {
    spec: &'a ClassSpec,
    word: Vec<u32>,
    memo: HashMap<Permutation, bool>,
}

impl<'a> PartGuard<'a> {
    fn new(spec: &'a ClassSpec) -> Self {
        PartGuard {
            spec,
            word: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn push(&mut self, v: u32) -> bool {
        self.word.push(v);
        if self.spec.is_lr_closed() {
            let key = standardize_distinct(&self.word);
            let spec = self.spec;
            *self.memo.entry(key).or_insert_with_key(|k| member(spec, k))
        } else {
            self.spec
                .basis()
                .iter()
                .all(|b| !occurs_ending_at_last(b, &self.word))
        }
    }

    fn pop(&mut self) {
        self.word.pop();
    }
}

struct MergeSearch<'a> {
    host: &'a [u32],
    shared: Vec<bool>,
    red: PartGuard<'a>,
    blue: PartGuard<'a>,
    colors: Vec<Color>,
}

impl MergeSearch<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.host.len() {
            return true;
        }
        let v = self.host[i];
        if self.shared[i] {
            let red_ok = self.red.push(v);
            let ok = red_ok && {
                let blue_ok = self.blue.push(v);
                let ok = blue_ok && {
                    self.colors.push(Color::Both);
                    let ok = self.run(i + 1);
                    if !ok {
                        self.colors.pop();
                    }
                    ok
                };
                if !ok {
                    self.blue.pop();
                }
                ok
            };
            if !ok {
                self.red.pop();
            }
            return ok;
        }
        for color in [Color::Red, Color::Blue] {
            let guard = if color == Color::Red {
                &mut self.red
            } else {
                &mut self.blue
            };
            if guard.push(v) {
                self.colors.push(color);
                if self.run(i + 1) {
                    return true;
                }
                self.colors.pop();
            }
            let guard = if color == Color::Red {
                &mut self.red
            } else {
                &mut self.blue
            };
            guard.pop();
        }
        false
    }
}

fn search(
    host: &Permutation,
    a: &ClassSpec,
    b: &ClassSpec,
    mode: MergeMode,
) -> Option<TwoColoring> {
    let mut shared = vec![false; host.len()];
    if mode == MergeMode::LrMerge {
        for p in host.lr_minima() {
            shared[p - 1] = true;
        }
    }
    let mut s = MergeSearch {
        host: host.as_slice(),
        shared,
        red: PartGuard::new(a),
        blue: PartGuard::new(b),
        colors: Vec::with_capacity(host.len()),
    };
    if s.run(0) {
        Some(TwoColoring {
            colors: s.colors,
            mode,
        })
    } else {
        None
    }
}

/// A coloring showing `perm ∈ a ⊙ b`, found by backtracking with red tried
/// before blue at every position.
pub fn check_merge(perm: &Permutation, a: &ClassSpec, b: &ClassSpec) -> Option<TwoColoring> {
    search(perm, a, b, MergeMode::Merge)
}

/// A coloring showing `perm ∈ a ⊙LR b`: left-to-right minima are shared and
/// only the remaining positions are searched.
pub fn check_lr_merge(perm: &Permutation, a: &ClassSpec, b: &ClassSpec) -> Option<TwoColoring> {
    search(perm, a, b, MergeMode::LrMerge)
}

/// A maximal streak of non-minimal entries covered by one left-to-right
/// minimum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Run {
    /// 1-based positions, increasing.
    pub members: Vec<usize>,
    /// 1-based position of the covering minimum.
    pub anchor: usize,
}

fn require_av123(perm: &Permutation) -> Result<()> {
    let pattern = Permutation::identity(3);
    match find_embedding(&pattern, perm) {
        Some(e) => Err(Error::NotInClass {
            perm: perm.clone(),
            class: "Av(123)".into(),
            witness: Some((pattern, e)),
        }),
        None => Ok(()),
    }
}

/// Greedy run decomposition of the non-minimal entries of a 123-avoider.
///
/// Each run starts at the first unused non-minimal entry `x`, anchors at the
/// rightmost left-to-right minimum covering `x`, and takes the following
/// non-minimal entries while the anchor still covers them.
pub fn runs_decompose_av123(perm: &Permutation) -> Result<Vec<Run>> {
    require_av123(perm)?;
    let minima = perm.lr_minima();
    let mut is_min = vec![false; perm.len() + 1];
    for &p in &minima {
        is_min[p] = true;
    }
    let others: Vec<usize> = (1..=perm.len()).filter(|&p| !is_min[p]).collect();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < others.len() {
        let first = others[i];
        let anchor = *minima
            .iter()
            .rev()
            .find(|&&m| m < first && perm.at(m) < perm.at(first))
            .expect("a non-minimal entry is covered by some minimum");
        let mut members = Vec::new();
        while i < others.len() && perm.at(anchor) < perm.at(others[i]) {
            members.push(others[i]);
            i += 1;
        }
        runs.push(Run { members, anchor });
    }
    Ok(runs)
}

/// LR-merge coloring of a 123-avoider whose runs alternate red and blue,
/// starting with red. Neither part contains 463152.
pub fn greedy_lr_split_av123(perm: &Permutation) -> Result<TwoColoring> {
    let runs = runs_decompose_av123(perm)?;
    let mut colors = vec![Color::Both; perm.len()];
    for (k, run) in runs.iter().enumerate() {
        let c = if k % 2 == 0 { Color::Red } else { Color::Blue };
        for &p in &run.members {
            colors[p - 1] = c;
        }
    }
    Ok(TwoColoring {
        colors,
        mode: MergeMode::LrMerge,
    })
}

/// LR-merge coloring of `perm ∈ Av(1423, 1342)` whose parts both lie in the
/// LR-closure of `Av(463152)`.
///
/// Built bottom-up over [`structure_decompose`]: every skeleton gets the
/// greedy run coloring, inflated blocks keep their own coloring and the
/// remaining skeleton entries keep the skeleton's color.
pub fn split_av1423_1342(perm: &Permutation) -> Result<TwoColoring> {
    let tree = structure_decompose(perm)?;
    let colors = color_tree(&tree)?;
    Ok(TwoColoring {
        colors,
        mode: MergeMode::LrMerge,
    })
}

fn color_tree(tree: &InflationTree) -> Result<Vec<Color>> {
    let skeleton = tree.skeleton();
    let top = greedy_lr_split_av123(skeleton)?;
    if tree.is_leaf() {
        return Ok(top.colors);
    }
    let mut children = tree.children().iter();
    let mut out = Vec::new();
    for (i, &c) in top.colors.iter().enumerate() {
        if skeleton.is_lr_minimum(i + 1) {
            let child = children.next().expect("one child per minimum");
            out.extend(color_tree(child)?);
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

/// Result of an exhaustive Ramsey-style coloring check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RamseyVerdict {
    /// Every coloring has a red `tau` or a blue `pi`.
    Forced,
    /// This coloring has neither.
    Avoidable(TwoColoring),
}

impl RamseyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, RamseyVerdict::Forced)
    }
}

pub const DEFAULT_RAMSEY_BOUND: usize = 16;

/// Does every red/blue coloring of `sigma` contain a red `tau` or a blue
/// `pi`? Searches for a coloring avoiding both, abandoning a branch as soon
/// as either color class contains its pattern.
pub fn check_ramsey_witness(
    sigma: &Permutation,
    tau: &Permutation,
    pi: &Permutation,
    bound: usize,
) -> Result<RamseyVerdict> {
    if sigma.len() > bound {
        return Err(Error::ResourceLimit {
            what: "ramsey host length",
            value: sigma.len(),
            limit: bound,
        });
    }
    if tau.is_empty() || pi.is_empty() {
        return Ok(RamseyVerdict::Forced);
    }
    let red = ClassSpec::new(vec![tau.clone()])?;
    let blue = ClassSpec::new(vec![pi.clone()])?;
    Ok(match check_merge(sigma, &red, &blue) {
        Some(c) => RamseyVerdict::Avoidable(c),
        None => RamseyVerdict::Forced,
    })
}
