//! Instance files: a line-oriented text format and a JSON mirror.
//!
//! ```text
//! setcover v1 n=4 C=1
//! # sets: S <id> <cost> <elements...>
//! S 1 1 1 2
//! S 2 1 3 4
//! TRACE
//! + 1
//! - 1
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{ElementId, SetSystem};
use crate::universe::{UniverseState, UpdateKind, UpdateStep};

/// A parsed instance: the set family plus its update trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub system: SetSystem,
    pub trace: Vec<UpdateStep>,
}

struct RawSet {
    label: u64,
    cost: f64,
    elements: Vec<u64>,
}

struct RawStep {
    line: usize,
    kind: UpdateKind,
    label: u64,
}

struct RawInstance {
    capacity: usize,
    aspect_ratio: f64,
    sets: Vec<RawSet>,
    trace: Vec<RawStep>,
}

impl RawInstance {
    fn build(self) -> Result<Instance> {
        let mut seen_sets = HashSet::new();
        let mut element_ids: HashMap<u64, usize> = HashMap::new();
        let mut element_labels = Vec::new();
        let mut set_labels = Vec::with_capacity(self.sets.len());
        let mut sets = Vec::with_capacity(self.sets.len());
        for raw in self.sets {
            if !seen_sets.insert(raw.label) {
                return Err(Error::Validation(format!("duplicate set id {}", raw.label)));
            }
            let elems = raw
                .elements
                .iter()
                .map(|&l| {
                    let next = element_labels.len();
                    let id = *element_ids.entry(l).or_insert(next);
                    if id == next {
                        element_labels.push(l);
                    }
                    ElementId::from(id)
                })
                .collect();
            set_labels.push(raw.label);
            sets.push((raw.cost, elems));
        }
        let system = SetSystem::with_labels(
            self.capacity,
            self.aspect_ratio,
            sets,
            set_labels,
            element_labels,
        )?;

        let mut universe = UniverseState::new(system.num_elements(), system.capacity());
        let mut trace = Vec::with_capacity(self.trace.len());
        for raw in self.trace {
            let Some(&id) = element_ids.get(&raw.label) else {
                return Err(Error::Validation(format!(
                    "line {}: trace element {} is not contained in any set",
                    raw.line, raw.label
                )));
            };
            let step = UpdateStep {
                kind: raw.kind,
                element: ElementId::from(id),
            };
            universe.apply(step).map_err(|e| match e {
                Error::Trace(msg) => Error::Trace(format!("line {}: {msg}", raw.line)),
                other => other,
            })?;
            trace.push(step);
        }
        Ok(Instance { system, trace })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(usize, f64)> {
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("setcover") {
        return Err(parse_err(line, "expected header `setcover v1 n=<int> C=<decimal>`"));
    }
    if tokens.next() != Some("v1") {
        return Err(parse_err(line, "unsupported format version"));
    }
    let mut n = None;
    let mut c = None;
    for tok in tokens {
        if let Some(v) = tok.strip_prefix("n=") {
            n = Some(v.parse::<usize>().map_err(|_| parse_err(line, format!("bad n `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("C=") {
            c = Some(v.parse::<f64>().map_err(|_| parse_err(line, format!("bad C `{v}`")))?);
        } else {
            return Err(parse_err(line, format!("unexpected header token `{tok}`")));
        }
    }
    match (n, c) {
        (Some(n), Some(c)) => Ok((n, c)),
        _ => Err(parse_err(line, "header needs both n= and C=")),
    }
}

fn parse_u64(line: usize, tok: &str, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_text(text: &str) -> Result<Instance> {
    let mut header = None;
    let mut sets = Vec::new();
    let mut trace = Vec::new();
    let mut in_trace = false;
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line, content)?);
            continue;
        }
        if content == "TRACE" {
            if in_trace {
                return Err(parse_err(line, "duplicate TRACE marker"));
            }
            in_trace = true;
            continue;
        }
        if in_trace {
            let (kind, rest) = if let Some(r) = content.strip_prefix('+') {
                (UpdateKind::Insert, r)
            } else if let Some(r) = content.strip_prefix('-') {
                (UpdateKind::Delete, r)
            } else {
                return Err(parse_err(line, format!("expected `+ <elem>` or `- <elem>`, got `{content}`")));
            };
            let mut toks = rest.split_whitespace();
            let label = match (toks.next(), toks.next()) {
                (Some(t), None) => parse_u64(line, t, "element id")?,
                _ => return Err(parse_err(line, "trace line takes exactly one element")),
            };
            trace.push(RawStep { line, kind, label });
        } else {
            let mut toks = content.split_whitespace();
            if toks.next() != Some("S") {
                return Err(parse_err(line, format!("expected `S <id> <cost> ...`, got `{content}`")));
            }
            let label = parse_u64(line, toks.next().ok_or_else(|| parse_err(line, "missing set id"))?, "set id")?;
            let cost_tok = toks.next().ok_or_else(|| parse_err(line, "missing cost"))?;
            let cost = cost_tok
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("bad cost `{cost_tok}`")))?;
            let elements = toks
                .map(|t| parse_u64(line, t, "element id"))
                .collect::<Result<Vec<_>>>()?;
            sets.push(RawSet { label, cost, elements });
        }
    }
    let (capacity, aspect_ratio) = header.ok_or_else(|| parse_err(1, "empty instance file"))?;
    RawInstance {
        capacity,
        aspect_ratio,
        sets,
        trace,
    }
    .build()
}

pub fn to_text(system: &SetSystem, trace: &[UpdateStep]) -> String {
    let mut out = String::new();
    writeln!(out, "setcover v1 n={} C={}", system.capacity(), system.aspect_ratio()).unwrap();
    for s in system.sets() {
        write!(out, "S {} {}", system.set_label(s), system.cost(s)).unwrap();
        for &e in system.members(s) {
            write!(out, " {}", system.element_label(e)).unwrap();
        }
        out.push('\n');
    }
    out.push_str("TRACE\n");
    for step in trace {
        let op = match step.kind {
            UpdateKind::Insert => '+',
            UpdateKind::Delete => '-',
        };
        writeln!(out, "{op} {}", system.element_label(step.element)).unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    #[serde(default = "default_format")]
    format: String,
    #[serde(default = "default_version")]
    version: u32,
    n: usize,
    #[serde(rename = "C")]
    aspect_ratio: f64,
    sets: Vec<JsonSet>,
    #[serde(default)]
    trace: Vec<JsonStep>,
}

fn default_format() -> String {
    "setcover".into()
}

fn default_version() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct JsonSet {
    id: u64,
    cost: f64,
    elements: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonStep {
    op: String,
    element: u64,
}

pub fn parse_json(text: &str) -> Result<Instance> {
    let doc: JsonInstance = serde_json::from_str(text)?;
    if doc.format != "setcover" || doc.version != 1 {
        return Err(Error::Validation(format!(
            "unsupported format {} v{}",
            doc.format, doc.version
        )));
    }
    let trace = doc
        .trace
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let kind = match s.op.as_str() {
                "+" | "insert" => UpdateKind::Insert,
                "-" | "delete" => UpdateKind::Delete,
                other => {
                    return Err(Error::Validation(format!("trace step {i}: bad op `{other}`")))
                }
            };
            Ok(RawStep {
                line: i + 1,
                kind,
                label: s.element,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RawInstance {
        capacity: doc.n,
        aspect_ratio: doc.aspect_ratio,
        sets: doc
            .sets
            .into_iter()
            .map(|s| RawSet {
                label: s.id,
                cost: s.cost,
                elements: s.elements,
            })
            .collect(),
        trace,
    }
    .build()
}

pub fn to_json(system: &SetSystem, trace: &[UpdateStep]) -> String {
    let doc = JsonInstance {
        format: default_format(),
        version: 1,
        n: system.capacity(),
        aspect_ratio: system.aspect_ratio(),
        sets: system
            .sets()
            .map(|s| JsonSet {
                id: system.set_label(s),
                cost: system.cost(s),
                elements: system.members(s).iter().map(|&e| system.element_label(e)).collect(),
            })
            .collect(),
        trace: trace
            .iter()
            .map(|st| JsonStep {
                op: match st.kind {
                    UpdateKind::Insert => "+".into(),
                    UpdateKind::Delete => "-".into(),
                },
                element: system.element_label(st.element),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes")
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("json"))
}

/// Reads an instance; `.json` paths use the JSON mirror.
pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

pub fn save_instance(path: impl AsRef<Path>, system: &SetSystem, trace: &[UpdateStep]) -> Result<()> {
    let path = path.as_ref();
    let text = if is_json(path) {
        to_json(system, trace)
    } else {
        to_text(system, trace)
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_legal_instance() {
        let inst = parse_text("setcover v1 n=1 C=1\nS 1 1 1\nTRACE\n+1\n").unwrap();
        assert_eq!(inst.system.num_sets(), 1);
        assert_eq!(inst.system.frequency(), 1);
        assert_eq!(inst.system.aspect_ratio(), 1.0);
        assert_eq!(inst.trace, vec![UpdateStep::insert(ElementId(0))]);
    }

    #[test]
    fn zero_cost_is_rejected() {
        let err = parse_text("setcover v1 n=1 C=1\nS 1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_text("setcover v1 n=2 C=1\n# comment\nS 1 x 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
        let err = parse_text("setcover v1 n=2 C=1\nS 1 1 1\nTRACE\n* 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_text("").is_err());
        assert!(parse_text("setcover v2 n=1 C=1\n").is_err());
    }

    #[test]
    fn trace_errors_are_reported() {
        let err = parse_text("setcover v1 n=2 C=1\nS 1 1 1\nTRACE\n- 1\n").unwrap_err();
        assert!(matches!(err, Error::Trace(_)));
        let err = parse_text("setcover v1 n=2 C=1\nS 1 1 1\nTRACE\n+ 9\n").unwrap_err();
        assert!(err.to_string().contains("not contained"));
        let err = parse_text("setcover v1 n=1 C=1\nS 1 1 1 2\nTRACE\n+ 1\n+ 2\n").unwrap_err();
        assert!(err.to_string().contains("capacity"));
    }

    #[test]
    fn labels_survive_round_trip() {
        let src = "setcover v1 n=4 C=2\nS 10 1 7 3\nS 20 0.75 3 9\nTRACE\n+ 9\n+ 7\n- 9\n";
        let inst = parse_text(src).unwrap();
        let text = to_text(&inst.system, &inst.trace);
        let again = parse_text(&text).unwrap();
        assert_eq!(again, inst);
        assert_eq!(to_text(&again.system, &again.trace), text);
        let json = to_json(&inst.system, &inst.trace);
        assert_eq!(parse_json(&json).unwrap(), inst);
    }
}
