//! 1-amalgamation certificates and constructions.
//!
//! A 1-amalgamation of two marked permutations is a common superpattern
//! `sigma` with embeddings `g1`, `g2` sending both marks to the same entry.
//! For 123-avoiders whose marks are not left-to-right minima the amalgam is
//! built geometrically from two-line drawings. The LR-closure
//! `Av(1423, 1342)` is handled by recursing through its inflation structure,
//! and marks on minima are handled by inflating the marked minimum.
//!
//! For reference: the only infinite classes that are amalgamable in the
//! full sense are `Av(12)`, `Av(21)`, the layered permutations
//! `Av(231, 312)`, their complements `Av(213, 132)` and the class of all
//! permutations. None of them is built here.

use std::fmt;

use serde_json::json;

use crate::classgen::{enumerate_class, member, ClassSpec};
use crate::drawing::{draw_av123_with_offset, halving, read_points, LinePoint, Rational};
use crate::error::{Error, Result};
use crate::inflation::{inflate, lr_inflate, structure_decompose};
use crate::perm::{embeddings, find_basis_occurrence, Embedding, Permutation};

/// A permutation with one distinguished position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedPermutation {
    perm: Permutation,
    mark: usize,
}

impl MarkedPermutation {
    pub fn new(perm: Permutation, mark: usize) -> Result<Self> {
        if mark == 0 || mark > perm.len() {
            return Err(Error::Index {
                position: mark,
                len: perm.len(),
            });
        }
        Ok(MarkedPermutation { perm, mark })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// 1-based marked position.
    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn mark_is_lr_minimum(&self) -> bool {
        self.perm.is_lr_minimum(self.mark)
    }

    pub fn reverse_complement(&self) -> MarkedPermutation {
        MarkedPermutation {
            perm: self.perm.reverse().complement(),
            mark: self.perm.len() + 1 - self.mark,
        }
    }
}

/// `sigma` together with embeddings of both inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmalgamCertificate {
    pub sigma: Permutation,
    pub g1: Embedding,
    pub g2: Embedding,
}

impl AmalgamCertificate {
    pub fn reverse_complement(&self) -> AmalgamCertificate {
        AmalgamCertificate {
            sigma: self.sigma.reverse().complement(),
            g1: self.g1.reverse(),
            g2: self.g2.reverse(),
        }
    }

    fn swapped(self) -> AmalgamCertificate {
        AmalgamCertificate {
            sigma: self.sigma,
            g1: self.g2,
            g2: self.g1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "sigma": self.sigma.to_spaced(),
            "g1": self.g1.indices(),
            "g2": self.g2.indices(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let sigma: Permutation = value
            .get("sigma")
            .and_then(|s| s.as_str())
            .ok_or_else(|| Error::Malformed("missing sigma".into()))?
            .parse()?;
        let map = |k: &str| -> Result<Embedding> {
            let idx: Vec<usize> = value
                .get(k)
                .and_then(|g| g.as_array())
                .ok_or_else(|| Error::Malformed(format!("missing {k}")))?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Malformed(format!("bad index in {k}")))?;
            Embedding::new(idx, sigma.len())
        };
        let g1 = map("g1")?;
        let g2 = map("g2")?;
        Ok(AmalgamCertificate { sigma, g1, g2 })
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rejection {
    BadEmbedding1,
    BadEmbedding2,
    MarksDiffer,
    NotInClass,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::BadEmbedding1 => "bad_embedding_1",
            Rejection::BadEmbedding2 => "bad_embedding_2",
            Rejection::MarksDiffer => "marks_differ",
            Rejection::NotInClass => "not_in_class",
        })
    }
}

pub fn check_one_amalgam(
    cert: &AmalgamCertificate,
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
    spec: &ClassSpec,
) -> std::result::Result<(), Rejection> {
    if !cert.g1.witnesses(&m1.perm, &cert.sigma) {
        return Err(Rejection::BadEmbedding1);
    }
    if !cert.g2.witnesses(&m2.perm, &cert.sigma) {
        return Err(Rejection::BadEmbedding2);
    }
    if cert.g1.image(m1.mark) != cert.g2.image(m2.mark) {
        return Err(Rejection::MarksDiffer);
    }
    if !member(spec, &cert.sigma) {
        return Err(Rejection::NotInClass);
    }
    Ok(())
}

/// Every left-to-right minimum of both inputs lands on a left-to-right
/// minimum of `sigma`.
pub fn preserves_lr_minima(
    cert: &AmalgamCertificate,
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
) -> bool {
    let keeps = |g: &Embedding, perm: &Permutation| {
        perm.lr_minima()
            .into_iter()
            .all(|p| cert.sigma.is_lr_minimum(g.image(p)))
    };
    keeps(&cert.g1, &m1.perm) && keeps(&cert.g2, &m2.perm)
}

pub fn search_one_amalgam(
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
    spec: &ClassSpec,
    max_len: usize,
) -> Option<AmalgamCertificate> {
    search_one_amalgam_where(m1, m2, spec, max_len, |_| true)
}

/// Scans `spec` by increasing length, then lexicographically, for the first
/// `sigma` with embeddings identifying the marks and accepted by `keep`.
pub fn search_one_amalgam_where<F>(
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
    spec: &ClassSpec,
    max_len: usize,
    keep: F,
) -> Option<AmalgamCertificate>
where
    F: Fn(&AmalgamCertificate) -> bool,
{
    let plain = spec.base();
    let from = m1.perm.len().max(m2.perm.len());
    for len in from..=max_len {
        let candidates = enumerate_class(&plain, len).expect("plain spec");
        for sigma in candidates {
            if spec.is_lr_closed() && !member(spec, &sigma) {
                continue;
            }
            if let Some(cert) = amalgam_in(&sigma, m1, m2, &keep) {
                return Some(cert);
            }
        }
    }
    None
}

fn amalgam_in<F>(
    sigma: &Permutation,
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
    keep: &F,
) -> Option<AmalgamCertificate>
where
    F: Fn(&AmalgamCertificate) -> bool,
{
    let second: Vec<Embedding> = embeddings(&m2.perm, sigma).collect();
    if second.is_empty() {
        return None;
    }
    for g1 in embeddings(&m1.perm, sigma) {
        let target = g1.image(m1.mark);
        for g2 in second.iter().filter(|g| g.image(m2.mark) == target) {
            let cert = AmalgamCertificate {
                sigma: sigma.clone(),
                g1: g1.clone(),
                g2: g2.clone(),
            };
            if keep(&cert) {
                return Some(cert);
            }
        }
    }
    None
}

fn require_avoids(perm: &Permutation, basis: &[Permutation], class: &str) -> Result<()> {
    match find_basis_occurrence(perm, basis) {
        Some(w) => Err(Error::NotInClass {
            perm: perm.clone(),
            class: class.into(),
            witness: Some(w),
        }),
        None => Ok(()),
    }
}

fn require_av123(perm: &Permutation) -> Result<()> {
    require_avoids(perm, &[Permutation::identity(3)], "Av(123)")
}

fn require_main_class(perm: &Permutation) -> Result<()> {
    let basis = [
        Permutation::from_word_unchecked(vec![1, 4, 2, 3]),
        Permutation::from_word_unchecked(vec![1, 3, 4, 2]),
    ];
    require_avoids(perm, &basis, "Av(1342, 1423)")
}

fn require_inner_mark(m: &MarkedPermutation) -> Result<()> {
    if m.mark_is_lr_minimum() {
        return Err(Error::MarkIsLrMinimum {
            perm: m.perm.clone(),
            mark: m.mark,
        });
    }
    Ok(())
}

fn av123_spec() -> ClassSpec {
    ClassSpec::new(vec![Permutation::identity(3)]).expect("valid basis")
}

/// LR-amalgamation of two 123-avoiders whose marks are not left-to-right
/// minima.
///
/// Both inputs are drawn on the same two lines. The second drawing slides
/// along the lines until its marked point sits on the first one's (both are
/// on the upper line). Any other point of the second drawing that still
/// shares a coordinate with the first is nudged along its line by
/// `d / 2^k` for the smallest `k` that leaves both drawings intact. The union
/// reads back as `sigma`; it lies on two lines, so avoids 123, and its lower
/// points are its minima.
pub fn lr_amalgamate_av123(
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
) -> Result<AmalgamCertificate> {
    require_av123(&m1.perm)?;
    require_av123(&m2.perm)?;
    require_inner_mark(m1)?;
    require_inner_mark(m2)?;

    let (n1, n2) = (m1.perm.len(), m2.perm.len());
    let d = (n1 + n2 + 1) as i64;
    let first = draw_av123_with_offset(&m1.perm, d)?;
    let second = draw_av123_with_offset(&m2.perm, d)?;
    let d = first.d;

    let shift = first.points[m1.mark - 1].x - second.points[m2.mark - 1].x;
    let moved: Vec<LinePoint> = second.points.iter().map(|p| p.shifted(shift)).collect();
    let clashes: Vec<usize> = (0..n2)
        .filter(|&j| j + 1 != m2.mark)
        .filter(|&j| {
            first
                .points
                .iter()
                .any(|q| q.x == moved[j].x || q.y(d) == moved[j].y(d))
        })
        .collect();

    let rounds = 2 * (n1 + n2) as u32;
    for k in 0..=rounds {
        let mut candidate = moved.clone();
        if k > 0 {
            let eps = halving(d, k);
            for &j in &clashes {
                candidate[j] = candidate[j].shifted(eps);
            }
        } else if !clashes.is_empty() {
            continue;
        }
        if let Some(cert) = union_certificate(&first.points, &candidate, m1, m2, d) {
            let sound = check_one_amalgam(&cert, m1, m2, &av123_spec()).is_ok()
                && preserves_lr_minima(&cert, m1, m2);
            if sound {
                return Ok(cert);
            }
        }
    }

    search_one_amalgam_where(m1, m2, &av123_spec(), n1 + n2 - 1, |c| {
        preserves_lr_minima(c, m1, m2)
    })
    .ok_or_else(|| Error::Malformed(format!("no LR-amalgam of {} and {}", m1.perm, m2.perm)))
}

/// Reads the union of two point sets as `sigma`, fusing the second mark into
/// the first. `None` if coordinates collide or the second set no longer
/// spells its permutation.
fn union_certificate(
    first: &[LinePoint],
    second: &[LinePoint],
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
    d: Rational,
) -> Option<AmalgamCertificate> {
    if read_points(second, d).ok()? != m2.perm {
        return None;
    }
    // (point, owner) with owner = (which drawing, index)
    let mut all: Vec<(LinePoint, usize, usize)> =
        first.iter().enumerate().map(|(i, &p)| (p, 1, i)).collect();
    all.extend(
        second
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != m2.mark)
            .map(|(j, &p)| (p, 2, j)),
    );
    let points: Vec<LinePoint> = all.iter().map(|t| t.0).collect();
    let sigma = read_points(&points, d).ok()?;

    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| all[i].0.x);
    let mut g1 = vec![0; first.len()];
    let mut g2 = vec![0; second.len()];
    for (pos, &i) in order.iter().enumerate() {
        let (_, owner, idx) = all[i];
        if owner == 1 {
            g1[idx] = pos + 1;
        } else {
            g2[idx] = pos + 1;
        }
    }
    g2[m2.mark - 1] = g1[m1.mark - 1];
    let len = sigma.len();
    Some(AmalgamCertificate {
        sigma,
        g1: Embedding::new(g1, len).ok()?,
        g2: Embedding::new(g2, len).ok()?,
    })
}

/// Start positions (1-based) of consecutive blocks of the given sizes.
fn starts(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut at = 1;
    for &s in sizes {
        out.push(at);
        at += s;
    }
    out
}

/// LR-amalgamation inside `Av(1423, 1342)`; neither mark may be a
/// left-to-right minimum.
///
/// Recurses on the top level `alpha⟨beta_1, …, beta_k⟩` of the structure
/// decomposition. A mark inside block `j` amalgamates `beta_j` with the
/// other input and puts the result back in place of `beta_j`. A mark on an
/// uninflated entry amalgamates `alpha` instead and then inflates the images
/// of its minima by the original blocks. When neither input decomposes, the
/// two-line construction applies.
pub fn lr_amalgamate_closure(
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
) -> Result<AmalgamCertificate> {
    require_main_class(&m1.perm)?;
    require_main_class(&m2.perm)?;
    require_inner_mark(m1)?;
    require_inner_mark(m2)?;
    closure_rec(m1, m2)
}

fn closure_rec(m1: &MarkedPermutation, m2: &MarkedPermutation) -> Result<AmalgamCertificate> {
    let tree = structure_decompose(&m1.perm)?;
    if tree.is_leaf() {
        if structure_decompose(&m2.perm)?.is_leaf() {
            return lr_amalgamate_av123(m1, m2);
        }
        return closure_rec(m2, m1).map(AmalgamCertificate::swapped);
    }

    let alpha = tree.skeleton().clone();
    let blocks: Vec<Permutation> = tree.children().iter().map(|c| c.value()).collect();
    let minima = alpha.lr_minima();
    let mut sizes = vec![1; alpha.len()];
    let mut block_at = vec![None; alpha.len()];
    for (i, &pos) in minima.iter().enumerate() {
        sizes[pos - 1] = blocks[i].len();
        block_at[pos - 1] = Some(i);
    }
    let origin = starts(&sizes);
    // alpha position and offset inside its block, for every entry of perm1
    let locate = |q: usize| -> (usize, usize) {
        let a = origin.partition_point(|&s| s <= q);
        (a, q - origin[a - 1])
    };
    let (a, offset) = locate(m1.mark);

    match block_at[a - 1] {
        Some(j) => {
            // mark inside an inflated block
            let inner = MarkedPermutation::new(blocks[j].clone(), offset + 1)?;
            let sub = closure_rec(&inner, m2)?;
            let mut new_blocks = blocks.clone();
            new_blocks[j] = sub.sigma.clone();
            let sigma = lr_inflate(&alpha, &new_blocks)?;
            let mut new_sizes = sizes.clone();
            new_sizes[a - 1] = sub.sigma.len();
            let at = starts(&new_sizes);
            let g1: Vec<usize> = (1..=m1.perm.len())
                .map(|q| {
                    let (b, off) = locate(q);
                    if b == a {
                        at[b - 1] + sub.g1.image(off + 1) - 1
                    } else {
                        at[b - 1] + off
                    }
                })
                .collect();
            let g2: Vec<usize> = (1..=m2.perm.len())
                .map(|q| at[a - 1] + sub.g2.image(q) - 1)
                .collect();
            let len = sigma.len();
            Ok(AmalgamCertificate {
                sigma,
                g1: Embedding::new(g1, len)?,
                g2: Embedding::new(g2, len)?,
            })
        }
        None => {
            // mark on an uninflated entry of alpha
            let outer = MarkedPermutation::new(alpha.clone(), a)?;
            let sub = closure_rec(&outer, m2)?;
            let base = &sub.sigma;
            let mut inflated = vec![Permutation::identity(1); base.len()];
            for (i, &pos) in minima.iter().enumerate() {
                let image = sub.g1.image(pos);
                if !base.is_lr_minimum(image) {
                    return Err(Error::Malformed(format!(
                        "amalgam {base} lost minimum {image}"
                    )));
                }
                inflated[image - 1] = blocks[i].clone();
            }
            let sigma = inflate(base, &inflated)?;
            let at = starts(&inflated.iter().map(Permutation::len).collect::<Vec<_>>());
            let g1: Vec<usize> = (1..=m1.perm.len())
                .map(|q| {
                    let (b, off) = locate(q);
                    at[sub.g1.image(b) - 1] + off
                })
                .collect();
            let g2: Vec<usize> = (1..=m2.perm.len())
                .map(|q| {
                    let r = sub.g2.image(q);
                    let block = &inflated[r - 1];
                    // the block minimum is one of its left-to-right minima
                    let low = block.iter().position(|v| v == 1).expect("nonempty");
                    at[r - 1] + low
                })
                .collect();
            let len = sigma.len();
            Ok(AmalgamCertificate {
                sigma,
                g1: Embedding::new(g1, len)?,
                g2: Embedding::new(g2, len)?,
            })
        }
    }
}

/// 1-amalgamation inside `Av(1423, 1342)` for arbitrary marks.
///
/// A mark on a left-to-right minimum is amalgamated by inflating that
/// minimum with the whole other permutation; the first input is checked
/// first. Otherwise this is [`lr_amalgamate_closure`].
pub fn one_amalgamate_av1423_1342(
    m1: &MarkedPermutation,
    m2: &MarkedPermutation,
) -> Result<AmalgamCertificate> {
    require_main_class(&m1.perm)?;
    require_main_class(&m2.perm)?;
    if m1.mark_is_lr_minimum() {
        return inflate_minimum(m1, m2);
    }
    if m2.mark_is_lr_minimum() {
        return inflate_minimum(m2, m1).map(AmalgamCertificate::swapped);
    }
    lr_amalgamate_closure(m1, m2)
}

/// Inflates the marked minimum of `host` by `guest`.
fn inflate_minimum(
    host: &MarkedPermutation,
    guest: &MarkedPermutation,
) -> Result<AmalgamCertificate> {
    let n = host.perm.len();
    let mut blocks = vec![Permutation::identity(1); n];
    blocks[host.mark - 1] = guest.perm.clone();
    let sigma = inflate(&host.perm, &blocks)?;
    let at = starts(&blocks.iter().map(Permutation::len).collect::<Vec<_>>());
    let block_start = at[host.mark - 1];
    let g_host: Vec<usize> = (1..=n)
        .map(|q| {
            if q == host.mark {
                block_start + guest.mark - 1
            } else {
                at[q - 1]
            }
        })
        .collect();
    let g_guest: Vec<usize> = (0..guest.perm.len()).map(|i| block_start + i).collect();
    let len = sigma.len();
    Ok(AmalgamCertificate {
        sigma,
        g1: Embedding::new(g_host, len)?,
        g2: Embedding::new(g_guest, len)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn mk(s: &str, mark: usize) -> MarkedPermutation {
        MarkedPermutation::new(p(s), mark).unwrap()
    }

    fn main_class() -> ClassSpec {
        ClassSpec::av(&["1423", "1342"]).unwrap()
    }

    /// Some mark pair and embeddings make `sigma` a valid amalgam.
    fn amalgam_exists(
        sigma: &Permutation,
        a: &Permutation,
        b: &Permutation,
        spec: &ClassSpec,
    ) -> bool {
        (1..=a.len()).any(|i| {
            (1..=b.len()).any(|j| {
                let m1 = MarkedPermutation::new(a.clone(), i).unwrap();
                let m2 = MarkedPermutation::new(b.clone(), j).unwrap();
                amalgam_in(sigma, &m1, &m2, &|c: &AmalgamCertificate| {
                    check_one_amalgam(c, &m1, &m2, spec).is_ok()
                })
                .is_some()
            })
        })
    }

    #[test]
    fn amalgam_of_1423_and_2431() {
        assert!(amalgam_exists(
            &p("3275416"),
            &p("1423"),
            &p("2431"),
            &ClassSpec::all()
        ));
    }

    #[test]
    fn lr_amalgam_532614() {
        let av123 = av123_spec();
        assert!(amalgam_exists(&p("532614"), &p("3142"), &p("231"), &av123));
        // and with LR-minima preserved, over non-minimal marks
        let ok = [3, 4].iter().any(|&i| {
            let m1 = mk("3142", i);
            let m2 = mk("231", 2);
            amalgam_in(&p("532614"), &m1, &m2, &|c: &AmalgamCertificate| {
                preserves_lr_minima(c, &m1, &m2)
            })
            .is_some()
        });
        assert!(ok);
    }

    #[test]
    fn trivial_self_amalgam() {
        let m = mk("3142", 2);
        let id = Embedding::new(vec![1, 2, 3, 4], 4).unwrap();
        let cert = AmalgamCertificate {
            sigma: p("3142"),
            g1: id.clone(),
            g2: id,
        };
        assert_eq!(check_one_amalgam(&cert, &m, &m, &ClassSpec::all()), Ok(()));
        let shifted = AmalgamCertificate {
            sigma: p("3142"),
            g1: Embedding::new(vec![1, 2, 3, 4], 4).unwrap(),
            g2: Embedding::new(vec![1, 2, 3, 4], 4).unwrap(),
        };
        assert_eq!(
            check_one_amalgam(&shifted, &m, &mk("3142", 4), &ClassSpec::all()),
            Err(Rejection::MarksDiffer)
        );
    }

    #[test]
    fn rejection_reasons() {
        let m1 = mk("12", 1);
        let m2 = mk("21", 1);
        let cert = AmalgamCertificate {
            sigma: p("12"),
            g1: Embedding::new(vec![1, 2], 2).unwrap(),
            g2: Embedding::new(vec![1, 2], 2).unwrap(),
        };
        assert_eq!(
            check_one_amalgam(&cert, &m1, &m2, &ClassSpec::all()),
            Err(Rejection::BadEmbedding2)
        );
        assert_eq!(
            check_one_amalgam(&cert, &m2, &m1, &ClassSpec::all()),
            Err(Rejection::BadEmbedding1)
        );
        let cert = AmalgamCertificate {
            sigma: p("12"),
            g1: Embedding::new(vec![1, 2], 2).unwrap(),
            g2: Embedding::new(vec![1, 2], 2).unwrap(),
        };
        assert_eq!(
            check_one_amalgam(&cert, &m1, &m1, &ClassSpec::av(&["12"]).unwrap()),
            Err(Rejection::NotInClass)
        );
    }

    #[test]
    fn singleton_search() {
        let m1 = mk("1", 1);
        let m2 = mk("2413", 3);
        let cert = search_one_amalgam(&m1, &m2, &ClassSpec::all(), 4).unwrap();
        assert_eq!(cert.sigma, p("2413"));
        assert_eq!(cert.g1.indices(), &[3]);
        assert_eq!(cert.g2.indices(), &[1, 2, 3, 4]);
    }

    #[test]
    fn search_and_construction_agree_on_3142_231() {
        let av123 = av123_spec();
        for i in [3, 4] {
            let m1 = mk("3142", i);
            let m2 = mk("231", 2);
            let found = search_one_amalgam(&m1, &m2, &av123, 6).unwrap();
            assert!(found.sigma.len() <= 6);
            let cert = lr_amalgamate_av123(&m1, &m2).unwrap();
            assert_eq!(check_one_amalgam(&cert, &m1, &m2, &av123), Ok(()));
            assert!(preserves_lr_minima(&cert, &m1, &m2));
            assert_eq!(cert.sigma.len(), 6);
        }
    }

    #[test]
    fn self_amalgam_by_drawing() {
        let m = mk("3142", 3);
        let cert = lr_amalgamate_av123(&m, &m).unwrap();
        assert_eq!(check_one_amalgam(&cert, &m, &m, &av123_spec()), Ok(()));
        assert!(preserves_lr_minima(&cert, &m, &m));
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(
            lr_amalgamate_av123(&mk("3142", 1), &mk("231", 2)),
            Err(Error::MarkIsLrMinimum { mark: 1, .. })
        ));
        assert!(matches!(
            lr_amalgamate_av123(&mk("123", 2), &mk("231", 2)),
            Err(Error::NotInClass { .. })
        ));
        assert!(matches!(
            one_amalgamate_av1423_1342(&mk("1423", 2), &mk("1", 1)),
            Err(Error::NotInClass { .. })
        ));
        assert!(MarkedPermutation::new(p("12"), 3).is_err());
    }

    #[test]
    fn closure_amalgam() {
        let m1 = mk("4357216", 3);
        let m2 = mk("231", 2);
        let cert = lr_amalgamate_closure(&m1, &m2).unwrap();
        assert_eq!(check_one_amalgam(&cert, &m1, &m2, &main_class()), Ok(()));
        assert!(preserves_lr_minima(&cert, &m1, &m2));
        assert!(cert.sigma.len() < 7 + 3);
        let m1 = mk("4357216", 4);
        let cert = lr_amalgamate_closure(&m1, &m2).unwrap();
        assert_eq!(check_one_amalgam(&cert, &m1, &m2, &main_class()), Ok(()));
        assert!(preserves_lr_minima(&cert, &m1, &m2));
    }

    #[test]
    fn minimum_inflation() {
        let m1 = mk("21", 1);
        let m2 = mk("12", 2);
        let cert = one_amalgamate_av1423_1342(&m1, &m2).unwrap();
        assert_eq!(cert.sigma, p("231"));
        assert_eq!(cert.g1.indices(), &[2, 3]);
        assert_eq!(cert.g2.indices(), &[1, 2]);
        assert_eq!(check_one_amalgam(&cert, &m1, &m2, &main_class()), Ok(()));
        let cert = one_amalgamate_av1423_1342(&m2, &m1).unwrap();
        assert_eq!(check_one_amalgam(&cert, &m2, &m1, &main_class()), Ok(()));
    }

    #[test]
    fn certificate_json() {
        let cert = one_amalgamate_av1423_1342(&mk("21", 1), &mk("12", 2)).unwrap();
        let j = cert.to_json();
        assert_eq!(j, json!({"sigma": "2 3 1", "g1": [2, 3], "g2": [1, 2]}));
        assert_eq!(AmalgamCertificate::from_json(&j).unwrap(), cert);
        assert!(
            AmalgamCertificate::from_json(&json!({"sigma": "2 3 1", "g1": [3, 2], "g2": [1]}))
                .is_err()
        );
    }
}
