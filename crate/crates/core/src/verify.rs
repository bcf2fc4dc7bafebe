//! Exhaustive verification suites.
//!
//! Each suite sweeps a finite slice of some class, sharded through
//! [`Execution`], and reports how many cases it checked and which failed.
//! The failure list is sorted so reports do not depend on shard order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::amalgamation::{
    check_one_amalgam, one_amalgamate_av1423_1342, AmalgamCertificate, MarkedPermutation,
};
use crate::classgen::{class_shards, count_class_with, member, ClassSpec, Limits};
use crate::drawing::{draw_av123, Line};
use crate::error::{Error, Result};
use crate::inflation::{inflate, lr_closure_member, lr_inflate, structure_decompose};
use crate::oracle;
use crate::par::Execution;
use crate::perm::{avoids, contains, embeddings, Permutation};
use crate::splitting::{
    certifies, check_merge, greedy_lr_split_av123, runs_decompose_av123, split_av1423_1342, Color,
    MergeMode, TwoColoring,
};

const KEPT_FAILURES: usize = 20;
const RANDOM_PAIRS: usize = 10_000;
const RANDOM_SEED: u64 = 0x5eed_1423_1342;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Structure,
    GreedySplit,
    ClassSplit,
    Amalgamation,
    Drawing,
    Golden,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Structure,
        Suite::GreedySplit,
        Suite::ClassSplit,
        Suite::Amalgamation,
        Suite::Drawing,
        Suite::Golden,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::GreedySplit => "greedy-split",
            Suite::ClassSplit => "class-split",
            Suite::Amalgamation => "amalgamation",
            Suite::Drawing => "drawing",
            Suite::Golden => "golden",
            Suite::Oracle => "oracle",
        }
    }

    /// Largest length swept when no override is given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Structure => 9,
            Suite::GreedySplit => 10,
            Suite::ClassSplit => 8,
            Suite::Amalgamation => 4,
            Suite::Drawing => 8,
            Suite::Golden => 0,
            Suite::Oracle => 8,
        }
    }

    pub fn run(self, max_n: Option<usize>, exec: Execution) -> SuiteReport {
        let n = max_n.unwrap_or(self.default_max_n());
        let tally = match self {
            Suite::Structure => structure(n, exec),
            Suite::GreedySplit => greedy_split(n, exec),
            Suite::ClassSplit => class_split(n, exec),
            Suite::Amalgamation => amalgamation(n, exec),
            Suite::Drawing => drawing(n, exec),
            Suite::Golden => golden(),
            Suite::Oracle => oracle_agreement(n, exec),
        };
        tally.into_report(self, n)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checked: u64,
    pub failed: u64,
    /// At most a handful of failing cases, sorted.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} (max n {}): {} checked, {} failed",
            self.suite, self.max_n, self.checked, self.failed
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(what);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        self.failures.extend(other.failures);
        self
    }

    fn into_report(mut self, suite: Suite, max_n: usize) -> SuiteReport {
        self.failures.sort();
        self.failures.truncate(KEPT_FAILURES);
        SuiteReport {
            suite: suite.name().to_string(),
            max_n,
            checked: self.checked,
            failed: self.failed,
            failures: self.failures,
        }
    }
}

fn sum(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// Runs `f` on every member of `spec` with length in `lengths`, one shard
/// per length and first entry.
fn sweep<F>(
    spec: &ClassSpec,
    lengths: std::ops::RangeInclusive<usize>,
    exec: Execution,
    f: F,
) -> Tally
where
    F: Fn(&Permutation, &mut Tally) + Sync + Send,
{
    let shards: Vec<_> = lengths
        .flat_map(|n| class_shards(spec, n).expect("plain spec"))
        .collect();
    sum(exec.map(shards, |shard| {
        let mut t = Tally::default();
        for perm in shard {
            f(&perm, &mut t);
        }
        t
    }))
}

fn av(basis: &[&str]) -> ClassSpec {
    ClassSpec::av(basis).expect("valid basis")
}

fn p(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

/// Membership in `Av(1423, 1342)` agrees with membership in the LR-closure
/// of `Av(123)` on all of `S_n`. Members also get a structure tree that
/// rebuilds them.
fn structure(max_n: usize, exec: Execution) -> Tally {
    let main = [p("1423"), p("1342")];
    let base = [Permutation::identity(3)];
    sweep(&ClassSpec::all(), 1..=max_n, exec, |perm, t| {
        let in_main = avoids(perm, &main);
        let in_closure = lr_closure_member(perm, |q| avoids(q, &base)).is_some();
        t.check(in_main == in_closure, || {
            format!("{perm}: class {in_main}, closure {in_closure}")
        });
        if in_main {
            let rebuilt = structure_decompose(perm).map(|tree| tree.value());
            t.check(rebuilt.as_ref() == Ok(perm), || {
                format!("{perm}: tree {rebuilt:?}")
            });
        }
    })
}

/// The greedy run coloring of a 123-avoider shares exactly its minima and
/// leaves 463152 out of both parts.
fn greedy_split(max_n: usize, exec: Execution) -> Tally {
    let bad = [p("463152")];
    sweep(&av(&["123"]), 1..=max_n, exec, |perm, t| {
        let ok = match greedy_lr_split_av123(perm) {
            Ok(c) => {
                c.validate(perm).is_ok()
                    && avoids(&c.red_part(perm), &bad)
                    && avoids(&c.blue_part(perm), &bad)
            }
            Err(_) => false,
        };
        t.check(ok, || perm.to_string());
    })
}

/// Every member of `Av(1423, 1342)` splits into two parts from the
/// LR-closure of `Av(463152)`, a proper subclass since 463152 itself is a
/// member of the big class.
fn class_split(max_n: usize, exec: Execution) -> Tally {
    let part = av(&["463152"]).lr_closure();
    let mut t = sweep(&av(&["1423", "1342"]), 1..=max_n, exec, |perm, t| {
        let ok = split_av1423_1342(perm).is_ok_and(|c| certifies(perm, &c, &part, &part).is_ok());
        t.check(ok, || perm.to_string());
    });
    let witness = p("463152");
    t.check(
        avoids(&witness, &[p("1423"), p("1342")]) && !member(&part, &witness),
        || "463152 does not separate the classes".into(),
    );
    t
}

fn marked(perms: &[Permutation]) -> Vec<MarkedPermutation> {
    perms
        .iter()
        .flat_map(|q| {
            (1..=q.len()).map(move |i| MarkedPermutation::new(q.clone(), i).expect("in range"))
        })
        .collect()
}

/// Every ordered pair of marked members of `Av(1423, 1342)` up to `max_n`
/// gets a valid certificate of length at most `|π1| + |π2| - 1`. For inputs
/// of length at most 3 the brute-force search must agree that one exists,
/// and cannot beat the construction's length.
fn amalgamation(max_n: usize, exec: Execution) -> Tally {
    let spec = av(&["1423", "1342"]);
    let members: Vec<Permutation> = (1..=max_n)
        .flat_map(|n| {
            class_shards(&spec, n)
                .expect("plain spec")
                .into_iter()
                .flatten()
        })
        .collect();
    let inputs = marked(&members);
    let spec = &spec;
    let inputs_ref = &inputs;
    sum(exec.map(inputs.clone(), |m1| {
        let mut t = Tally::default();
        for m2 in inputs_ref {
            let label = || {
                format!(
                    "({}, {}) with ({}, {})",
                    m1.perm(),
                    m1.mark(),
                    m2.perm(),
                    m2.mark()
                )
            };
            let cert = match one_amalgamate_av1423_1342(&m1, m2) {
                Ok(c) => c,
                Err(e) => {
                    t.check(false, || format!("{}: {e}", label()));
                    continue;
                }
            };
            let verdict = check_one_amalgam(&cert, &m1, m2, spec);
            let bound = m1.perm().len() + m2.perm().len() - 1;
            t.check(verdict.is_ok() && cert.sigma.len() <= bound, || {
                format!("{}: {verdict:?}, sigma {}", label(), cert.sigma)
            });
            if m1.perm().len() <= 3 && m2.perm().len() <= 3 {
                let brute =
                    oracle::brute_min_amalgam(m1.perm(), m1.mark(), m2.perm(), m2.mark(), spec, 8);
                t.check(
                    matches!(brute, Ok(Some(len)) if len <= cert.sigma.len()),
                    || format!("{}: brute {brute:?}", label()),
                );
            }
        }
        t
    }))
}

/// Drawings of 123-avoiders read back correctly with minima on the lower
/// line; everything containing 123 is refused.
fn drawing(max_n: usize, exec: Execution) -> Tally {
    let mut t = sweep(&av(&["123"]), 1..=max_n, exec, |perm, t| {
        let ok = draw_av123(perm).is_ok_and(|d| {
            d.read_back().as_ref() == Ok(perm)
                && d.points
                    .iter()
                    .enumerate()
                    .all(|(i, q)| (q.line == Line::Lower) == perm.is_lr_minimum(i + 1))
        });
        t.check(ok, || perm.to_string());
    });
    let pattern = Permutation::identity(3);
    let refused = sweep(&ClassSpec::all(), 1..=max_n.min(6), exec, |perm, t| {
        if contains(&pattern, perm) {
            let ok = matches!(draw_av123(perm), Err(Error::NotInClass { .. }));
            t.check(ok, || format!("{perm} drawn"));
        }
    });
    t = t.merge(refused);
    t
}

/// Some mark pair and embeddings turn `sigma` into a certificate accepted
/// by `accept`.
fn some_certificate<F>(sigma: &Permutation, a: &Permutation, b: &Permutation, accept: F) -> bool
where
    F: Fn(&AmalgamCertificate, &MarkedPermutation, &MarkedPermutation) -> bool,
{
    let firsts: Vec<_> = embeddings(a, sigma).collect();
    let seconds: Vec<_> = embeddings(b, sigma).collect();
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let m1 = MarkedPermutation::new(a.clone(), i).expect("in range");
            let m2 = MarkedPermutation::new(b.clone(), j).expect("in range");
            for g1 in &firsts {
                for g2 in &seconds {
                    let cert = AmalgamCertificate {
                        sigma: sigma.clone(),
                        g1: g1.clone(),
                        g2: g2.clone(),
                    };
                    if accept(&cert, &m1, &m2) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Worked examples that must come out exactly.
fn golden() -> Tally {
    let mut t = Tally::default();

    let blocks = [p("213"), p("1"), p("21"), p("12")];
    let inflated = inflate(&p("2413"), &blocks);
    t.check(inflated == Ok(p("43582167")), || {
        format!("inflation gave {inflated:?}")
    });

    let lr = lr_inflate(&p("2413"), &[p("213"), p("21")]);
    t.check(lr == Ok(p("4357216")), || {
        format!("LR-inflation gave {lr:?}")
    });
    let base = [Permutation::identity(3)];
    let tree = lr_closure_member(&p("4357216"), |q| avoids(q, &base)).map(|tr| tr.to_json());
    let expected = json!({
        "skeleton": "2413",
        "children": [
            {"skeleton": "213", "children": []},
            {"skeleton": "21", "children": []},
        ],
    });
    t.check(tree.as_ref() == Some(&expected), || {
        format!("tree {tree:?}")
    });

    let host = p("462153");
    let colors: Vec<Color> = "*R**BR".chars().filter_map(Color::from_symbol).collect();
    let ok = TwoColoring::new(colors, MergeMode::LrMerge).is_ok_and(|c| {
        c.validate(&host).is_ok()
            && c.red_part(&host) == p("45213")
            && c.blue_part(&host) == p("3214")
    });
    t.check(ok, || "LR-merge certificate of 462153".into());

    let all = ClassSpec::all();
    t.check(
        some_certificate(&p("3275416"), &p("1423"), &p("2431"), |c, m1, m2| {
            check_one_amalgam(c, m1, m2, &all).is_ok()
        }),
        || "3275416 is not an amalgam of 1423 and 2431".into(),
    );

    let q = p("796385412");
    let runs = runs_decompose_av123(&q).map(|rs| {
        rs.iter()
            .map(|r| r.members.iter().map(|&i| q.at(i)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    t.check(runs == Ok(vec![vec![9, 8], vec![5, 4], vec![2]]), || {
        format!("runs {runs:?}")
    });

    let av123 = av(&["123"]);
    t.check(
        some_certificate(&p("532614"), &p("3142"), &p("231"), |c, m1, m2| {
            !m1.mark_is_lr_minimum()
                && !m2.mark_is_lr_minimum()
                && check_one_amalgam(c, m1, m2, &av123).is_ok()
                && crate::amalgamation::preserves_lr_minima(c, m1, m2)
        }),
        || "532614 is not an LR-amalgam of 3142 and 231".into(),
    );
    t
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        word.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(word).expect("shuffled identity")
}

/// Fast paths against the brute-force oracle.
fn oracle_agreement(max_n: usize, exec: Execution) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let pairs: Vec<(Permutation, Permutation)> = (0..RANDOM_PAIRS)
        .map(|_| {
            let n = rng.gen_range(0..=10);
            let k = rng.gen_range(0..=n.min(6));
            (random_perm(&mut rng, k), random_perm(&mut rng, n))
        })
        .collect();
    let mut t = sum(exec.map(pairs, |(pattern, host)| {
        let mut t = Tally::default();
        let brute = oracle::brute_contains(&pattern, &host);
        t.check(brute == Ok(contains(&pattern, &host)), || {
            format!("{pattern} in {host}")
        });
        t
    }));

    // every pattern against every host of length at most 7
    let patterns: Vec<Permutation> = (0..=7).flat_map(oracle::all_perms).collect();
    let patterns = &patterns;
    t = t.merge(sweep(&ClassSpec::all(), 0..=7, exec, |host, t| {
        let inside = oracle::brute_patterns(host).expect("short host");
        for pattern in patterns.iter().take_while(|q| q.len() <= host.len()) {
            t.check(inside.contains(pattern) == contains(pattern, host), || {
                format!("{pattern} in {host}")
            });
        }
    }));

    let part = av(&["463152"]).lr_closure();
    t = t.merge(sweep(&av(&["1423", "1342"]), 0..=max_n, exec, |perm, t| {
        let brute = oracle::brute_merge(perm, &part, &part);
        let fast = check_merge(perm, &part, &part);
        t.check(brute == Ok(fast.is_some()), || format!("merge of {perm}"));
    }));

    let av123 = av(&["123"]);
    for n in 1..=max_n {
        let fast = count_class_with(&av123, n, Limits::default(), exec).ok();
        let brute = oracle::brute_class(&[Permutation::identity(3)], n)
            .ok()
            .map(|s| s.len() as u64);
        t.check(fast.is_some() && fast == brute, || {
            format!("|Av(123)| at {n}: {fast:?} vs {brute:?}")
        });
    }
    t
}

/// Runs every suite at its default size.
pub fn run_all(exec: Execution) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|s| s.run(None, exec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let n = match s {
                Suite::Amalgamation => 3,
                Suite::Golden => 0,
                _ => 5,
            };
            let r = s.run(Some(n), Execution::Sequential);
            assert!(r.passed(), "{r} {:?}", r.failures);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = Suite::GreedySplit.run(Some(7), Execution::Sequential);
        let b = Suite::GreedySplit.run(Some(7), Execution::Parallel);
        assert_eq!(a, b);
    }
}
