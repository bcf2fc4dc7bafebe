use std::io::Read;

use permlab::amalgamation::{
    check_one_amalgam, one_amalgamate_av1423_1342, search_one_amalgam, AmalgamCertificate,
    MarkedPermutation,
};
use permlab::classgen::{count_class_with, enumerate_class, member, ClassSpec, Limits};
use permlab::drawing::{draw_av123, Line, LineDrawing};
use permlab::error::Error;
use permlab::inflation::{structure_decompose, InflationTree};
use permlab::par::Execution;
use permlab::perm::{find_embedding, Permutation};
use permlab::splitting::{certifies, split_av1423_1342, TwoColoring};
use permlab::verify::Suite;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok,
    NotFound,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotFound => "not_found",
            Status::Error => "error",
        }
    }
}

pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub exit_code: u8,
}

impl CommandResult {
    pub fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            exit_code: 0,
        }
    }

    pub fn not_found(payload: Value) -> Self {
        CommandResult {
            status: Status::NotFound,
            payload,
            exit_code: 1,
        }
    }

    /// A well-formed request the library refused.
    pub fn rejected(payload: Value) -> Self {
        CommandResult {
            status: Status::Error,
            payload,
            exit_code: 1,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({ "kind": "usage", "message": message.into() }),
            exit_code: 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "status": self.status.as_str(), "payload": self.payload })
    }
}

impl From<Error> for CommandResult {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::InvalidWord(_)
            | Error::InvalidBasis(_)
            | Error::Index { .. }
            | Error::Malformed(_) => CommandResult::usage(message),
            Error::NotInClass {
                perm,
                class,
                witness,
            } => {
                let witness = witness.map(|(pattern, embedding)| {
                    json!({ "pattern": pattern.to_spaced(), "embedding": embedding.indices() })
                });
                CommandResult::rejected(json!({
                    "kind": "not_in_class",
                    "message": message,
                    "perm": perm.to_spaced(),
                    "class": class,
                    "witness": witness,
                }))
            }
            Error::MarkIsLrMinimum { perm, mark } => CommandResult::rejected(json!({
                "kind": "mark_is_lr_minimum",
                "message": message,
                "perm": perm.to_spaced(),
                "mark": mark,
            })),
            Error::ResourceLimit { .. } => {
                CommandResult::rejected(json!({ "kind": "resource_limit", "message": message }))
            }
            Error::UnsupportedSpec(_) | Error::Arity { .. } => {
                CommandResult::rejected(json!({ "kind": "unsupported", "message": message }))
            }
        }
    }
}

pub type Outcome = Result<CommandResult, CommandResult>;

fn perm(text: &str) -> Result<Permutation, CommandResult> {
    text.parse()
        .map_err(|e: Error| CommandResult::usage(format!("{text:?}: {e}")))
}

fn perms(texts: &[String]) -> Result<Vec<Permutation>, CommandResult> {
    texts.iter().map(|t| perm(t)).collect()
}

fn class(basis: &[String], lr_closed: bool) -> Result<ClassSpec, CommandResult> {
    let spec = ClassSpec::new(perms(basis)?)?;
    Ok(if lr_closed { spec.lr_closure() } else { spec })
}

fn marked(text: &str, mark: usize) -> Result<MarkedPermutation, CommandResult> {
    Ok(MarkedPermutation::new(perm(text)?, mark)?)
}

/// JSON from the argument, or from stdin when the argument is `-`.
fn document(arg: &str) -> Result<Value, CommandResult> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CommandResult::usage(format!("stdin: {e}")))?;
        buf
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CommandResult::usage(format!("invalid JSON: {e}")))
}

fn main_class() -> ClassSpec {
    ClassSpec::av(&["1423", "1342"]).expect("valid basis")
}

fn split_parts() -> ClassSpec {
    ClassSpec::av(&["463152"])
        .expect("valid basis")
        .lr_closure()
}

pub fn contains(pattern: &str, host: &str) -> Outcome {
    let (pattern, host) = (perm(pattern)?, perm(host)?);
    let found = find_embedding(&pattern, &host);
    Ok(CommandResult::ok(json!({
        "pattern": pattern.to_spaced(),
        "host": host.to_spaced(),
        "contains": found.is_some(),
        "embedding": found.map(|e| e.indices().to_vec()),
    })))
}

pub fn enumerate(
    basis: &[String],
    n: usize,
    count_only: bool,
    lr_closed: bool,
    exec: Execution,
) -> Outcome {
    let spec = class(basis, lr_closed)?;
    if count_only {
        let counts = (1..=n)
            .map(|k| {
                let c = count_class_with(&spec, k, Limits::default(), exec)?;
                Ok(json!({ "n": k, "count": c }))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        return Ok(CommandResult::ok(
            json!({ "class": spec.to_string(), "counts": counts }),
        ));
    }
    let members: Vec<String> = if spec.is_lr_closed() {
        let limit = Limits::default().closure_scan_max_n;
        if n > limit {
            return Err(Error::ResourceLimit {
                what: "closure listing length",
                value: n,
                limit,
            }
            .into());
        }
        let everything = ClassSpec::all();
        enumerate_class(&everything, n)?
            .filter(|q| member(&spec, q))
            .map(|q| q.to_spaced())
            .collect()
    } else {
        enumerate_class(&spec, n)?.map(|q| q.to_spaced()).collect()
    };
    Ok(CommandResult::ok(json!({
        "class": spec.to_string(),
        "n": n,
        "count": members.len(),
        "permutations": members,
    })))
}

pub fn decompose(text: &str) -> Outcome {
    let tree = structure_decompose(&perm(text)?)?;
    Ok(CommandResult::ok(tree.to_json()))
}

pub fn split(text: &str) -> Outcome {
    let coloring = split_av1423_1342(&perm(text)?)?;
    Ok(CommandResult::ok(coloring.to_json()))
}

pub fn amalgamate(
    p1: &str,
    mark1: usize,
    p2: &str,
    mark2: usize,
    search: Option<usize>,
    basis: &[String],
) -> Outcome {
    let (m1, m2) = (marked(p1, mark1)?, marked(p2, mark2)?);
    let Some(max_len) = search else {
        let cert = one_amalgamate_av1423_1342(&m1, &m2)?;
        return Ok(CommandResult::ok(cert.to_json()));
    };
    let spec = if basis.is_empty() {
        main_class()
    } else {
        class(basis, false)?
    };
    if max_len < m1.perm().len().max(m2.perm().len()) {
        return Err(CommandResult::usage(
            "search length is shorter than an input",
        ));
    }
    match search_one_amalgam(&m1, &m2, &spec, max_len) {
        Some(cert) => Ok(CommandResult::ok(cert.to_json())),
        None => Ok(CommandResult::not_found(json!({
            "class": spec.to_string(),
            "max_len": max_len,
        }))),
    }
}

pub fn draw(text: &str) -> Outcome {
    Ok(CommandResult::ok(draw_av123(&perm(text)?)?.to_json()))
}

pub fn verify(suite: &str, max_n: Option<usize>, exec: Execution) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite
            .parse()
            .map_err(|_| CommandResult::usage(format!("unknown suite {suite:?}")))?]
    };
    let reports: Vec<_> = suites.iter().map(|s| s.run(max_n, exec)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let payload = json!({ "passed": passed, "suites": reports });
    Ok(if passed {
        CommandResult::ok(payload)
    } else {
        CommandResult::rejected(payload)
    })
}

fn verdict(problem: Option<String>) -> CommandResult {
    match problem {
        None => CommandResult::ok(json!({ "valid": true })),
        Some(reason) => CommandResult::rejected(json!({
            "kind": "invalid_certificate",
            "valid": false,
            "reason": reason,
        })),
    }
}

pub fn check_tree(text: &str, doc: &str) -> Outcome {
    let target = perm(text)?;
    let tree = InflationTree::from_json(&document(doc)?)?;
    let problem = match tree.validate() {
        Err(e) => Some(e.to_string()),
        Ok(()) if tree.value() != target => Some(format!("tree builds {}", tree.value())),
        Ok(()) => None,
    };
    Ok(verdict(problem))
}

pub fn check_split(text: &str, doc: &str) -> Outcome {
    let host = perm(text)?;
    let coloring = TwoColoring::from_json(&document(doc)?)?;
    let parts = split_parts();
    Ok(verdict(
        certifies(&host, &coloring, &parts, &parts)
            .err()
            .map(|e| e.to_string()),
    ))
}

pub fn check_amalgam(
    p1: &str,
    mark1: usize,
    p2: &str,
    mark2: usize,
    doc: &str,
    basis: &[String],
) -> Outcome {
    let (m1, m2) = (marked(p1, mark1)?, marked(p2, mark2)?);
    let cert = AmalgamCertificate::from_json(&document(doc)?)?;
    let spec = if basis.is_empty() {
        main_class()
    } else {
        class(basis, false)?
    };
    Ok(verdict(
        check_one_amalgam(&cert, &m1, &m2, &spec)
            .err()
            .map(|r| r.to_string()),
    ))
}

pub fn check_drawing(text: &str, doc: &str) -> Outcome {
    let target = perm(text)?;
    let drawing = LineDrawing::from_json(&document(doc)?)?;
    let problem = match drawing.read_back() {
        Err(e) => Some(e.to_string()),
        Ok(q) if q != target => Some(format!("drawing reads {q}")),
        Ok(_) => {
            let misplaced = drawing
                .points
                .iter()
                .enumerate()
                .any(|(i, p)| (p.line == Line::Lower) != target.is_lr_minimum(i + 1));
            misplaced.then(|| "lower line differs from the left-to-right minima".to_string())
        }
    };
    Ok(verdict(problem))
}
