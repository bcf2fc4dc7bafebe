//! 123-avoiders drawn on two parallel lines of slope -1.
//!
//! The lower line is `y = -x` and the upper line is `y = -x + d`. Reading a
//! point set left to right and ranking the heights gives back a permutation.
//! Any point on the lower line is below everything to its left, so lower
//! points always read back as left-to-right minima.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::perm::{find_embedding, standardize_distinct, Permutation};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Line {
    Lower,
    Upper,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Line::Lower => "lower",
            Line::Upper => "upper",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LinePoint {
    pub line: Line,
    pub x: Rational,
}

impl LinePoint {
    pub fn y(&self, d: Rational) -> Rational {
        match self.line {
            Line::Lower => -self.x,
            Line::Upper => -self.x + d,
        }
    }

    /// Slides the point along its own line.
    pub fn shifted(self, dx: Rational) -> LinePoint {
        LinePoint {
            line: self.line,
            x: self.x + dx,
        }
    }
}

/// One point per entry of the source permutation, in source position order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineDrawing {
    pub d: Rational,
    pub points: Vec<LinePoint>,
}

impl LineDrawing {
    /// The permutation the points spell, or an error if two points share an
    /// `x` or a `y` coordinate.
    pub fn read_back(&self) -> Result<Permutation> {
        read_points(&self.points, self.d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<serde_json::Value> = self
            .points
            .iter()
            .map(|p| json!({ "line": p.line.to_string(), "x": ratio_string(p.x) }))
            .collect();
        json!({ "d": ratio_string(self.d), "points": points })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let field = |v: &serde_json::Value, k: &str| -> Result<String> {
            v.get(k)
                .and_then(|s| s.as_str())
                .map(str::to_string)
                .ok_or_else(|| Error::Malformed(format!("missing {k}")))
        };
        let d = parse_ratio(&field(value, "d")?)?;
        let points = value
            .get("points")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::Malformed("missing points".into()))?
            .iter()
            .map(|p| {
                let line = match field(p, "line")?.as_str() {
                    "lower" => Line::Lower,
                    "upper" => Line::Upper,
                    other => return Err(Error::Malformed(format!("line {other}"))),
                };
                Ok(LinePoint {
                    line,
                    x: parse_ratio(&field(p, "x")?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LineDrawing { d, points })
    }
}

/// Exact rationals are written as `"p/q"`.
pub fn ratio_string(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn read_points(points: &[LinePoint], d: Rational) -> Result<Permutation> {
    let xs: HashSet<Rational> = points.iter().map(|p| p.x).collect();
    let ys: HashSet<Rational> = points.iter().map(|p| p.y(d)).collect();
    if xs.len() != points.len() || ys.len() != points.len() {
        return Err(Error::Malformed("coinciding coordinates".into()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i].x);
    let heights: Vec<Rational> = order.iter().map(|&i| points[i].y(d)).collect();
    Ok(standardize_distinct_ratio(&heights))
}

fn standardize_distinct_ratio(heights: &[Rational]) -> Permutation {
    let mut idx: Vec<usize> = (0..heights.len()).collect();
    idx.sort_by_key(|&i| heights[i]);
    let mut word = vec![0u32; heights.len()];
    for (rank, &i) in idx.iter().enumerate() {
        word[i] = rank as u32 + 1;
    }
    standardize_distinct(&word)
}

/// Draws a 123-avoider with line offset `n + 1`.
pub fn draw_av123(perm: &Permutation) -> Result<LineDrawing> {
    draw_av123_with_offset(perm, perm.len() as i64 + 1)
}

/// Draws `perm` with its left-to-right minima on the lower line and every
/// other entry on the upper line.
///
/// The abscissae solve a system of strict difference constraints with unit
/// gaps: `x` grows with position, and `z = x - d·[upper]` shrinks as the
/// value grows (so `y = -z` grows with it). The least solution is a longest
/// path, found by Bellman-Ford; a positive cycle means the two lines cannot
/// host `perm`, which happens exactly when `perm` contains 123.
pub fn draw_av123_with_offset(perm: &Permutation, d: i64) -> Result<LineDrawing> {
    let n = perm.len();
    let mut upper = vec![true; n];
    for p in perm.lr_minima() {
        upper[p - 1] = false;
    }
    let lift = |i: usize| if upper[i] { d } else { 0 };

    // edge (from, to, w): x[to] >= x[from] + w
    let mut edges: Vec<(usize, usize, i64)> = (1..n).map(|i| (i - 1, i, 1)).collect();
    let mut pos_of = vec![0usize; n];
    for (i, v) in perm.iter().enumerate() {
        pos_of[v as usize - 1] = i;
    }
    for v in 1..n {
        let (low, high) = (pos_of[v - 1], pos_of[v]);
        // z[low] >= z[high] + 1
        edges.push((high, low, 1 + lift(low) - lift(high)));
    }

    let mut x = vec![0i64; n];
    let mut settled = false;
    for _ in 0..=n {
        let mut changed = false;
        for &(from, to, w) in &edges {
            if x[from] + w > x[to] {
                x[to] = x[from] + w;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        let pattern = Permutation::identity(3);
        let witness = find_embedding(&pattern, perm).map(|e| (pattern, e));
        return Err(Error::NotInClass {
            perm: perm.clone(),
            class: "Av(123)".into(),
            witness,
        });
    }

    let points = (0..n)
        .map(|i| LinePoint {
            line: if upper[i] { Line::Upper } else { Line::Lower },
            x: Rational::from_integer(x[i]),
        })
        .collect();
    let drawing = LineDrawing {
        d: Rational::from_integer(d),
        points,
    };
    debug_assert_eq!(drawing.read_back().as_ref(), Ok(perm));
    Ok(drawing)
}

/// `d / 2^k`.
pub(crate) fn halving(d: Rational, k: u32) -> Rational {
    let mut r = d;
    let two = Rational::one() + Rational::one();
    for _ in 0..k {
        r /= two;
    }
    debug_assert!(r > Rational::zero());
    r
}
