//! Input loading: the plain-text graph format and re-ingestion of this
//! tool's own JSON reports.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! v a            # declare an isolated vertex
//! e a b          # declare an edge (endpoints are declared implicitly)
//! loops a 2      # attach two triangles at `a` (grape commands only)
//! ```
//!
//! A JSON input (first non-blank byte `{`) must carry a `graph` object with
//! `vertices` and `edges` arrays, as produced by `ud --json`; an optional
//! top-level `n` is picked up as the default strand count.

use std::fmt;
use std::path::Path;

use gbg_core::{Error, Graph};

/// A fully parsed input file.
pub struct Input {
    pub graph: Graph,
    /// Loop annotations in declaration order, resolved to vertex names.
    pub loops: Vec<(String, usize)>,
    /// Whether any `loops` directive appeared (even with count zero).
    pub has_loops: bool,
    /// FNV-1a digest of the raw bytes, hex with a scheme prefix.
    pub digest: String,
    /// Strand count embedded in a JSON input, if any.
    pub json_n: Option<usize>,
}

/// A diagnostic tied to a position in the input text.
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

pub enum LoadError {
    Io(String),
    Parse(ParseError),
    Core(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "{m}"),
            LoadError::Parse(p) => write!(f, "{p}"),
            LoadError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl LoadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Io(_) | LoadError::Parse(_) => 1,
            LoadError::Core(e) => match e {
                Error::InvalidGraph(_) | Error::InvalidArgument(_) => 1,
                _ => 2,
            },
        }
    }
}

pub fn fnv1a(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{h:016x}")
}

pub fn load(path: &Path) -> Result<Input, LoadError> {
    let bytes = std::fs::read(path)
        .map_err(|e| LoadError::Io(format!("cannot read {}: {e}", path.display())))?;
    let digest = fnv1a(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| LoadError::Io(format!("{} is not valid UTF-8", path.display())))?;
    if text.trim_start().starts_with('{') {
        return load_json(&text, digest);
    }
    let (names, edges, loops, has_loops) = parse_text(&text).map_err(LoadError::Parse)?;
    let graph = Graph::build(&names, &edges).map_err(LoadError::Core)?;
    Ok(Input { graph, loops, has_loops, digest, json_n: None })
}

fn load_json(text: &str, digest: String) -> Result<Input, LoadError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        LoadError::Parse(ParseError {
            line: e.line(),
            col: e.column().max(1),
            msg: format!("invalid JSON: {e}"),
        })
    })?;
    let bad = |msg: &str| {
        LoadError::Parse(ParseError { line: 1, col: 1, msg: msg.to_string() })
    };
    let graph = value.get("graph").ok_or_else(|| bad("JSON input lacks a \"graph\" object"))?;
    let names: Vec<String> = graph
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("JSON graph lacks a \"vertices\" array"))?
        .iter()
        .map(|v| v.as_str().map(str::to_string))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("JSON graph vertices must be strings"))?;
    let edges: Vec<(String, String)> = graph
        .get("edges")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("JSON graph lacks an \"edges\" array"))?
        .iter()
        .map(|e| {
            let pair = e.as_array()?;
            match pair.as_slice() {
                [u, v] => Some((u.as_str()?.to_string(), v.as_str()?.to_string())),
                _ => None,
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| bad("JSON graph edges must be two-element string arrays"))?;
    let json_n = value.get("n").and_then(|n| n.as_u64()).map(|n| n as usize);
    let graph = Graph::build(&names, &edges).map_err(LoadError::Core)?;
    Ok(Input { graph, loops: Vec::new(), has_loops: false, digest, json_n })
}

type Parsed = (Vec<String>, Vec<(String, String)>, Vec<(String, usize)>, bool);

fn parse_text(text: &str) -> Result<Parsed, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut edge_keys = std::collections::BTreeSet::new();
    // (vertex, count, line, column of the vertex token)
    let mut loop_lines: Vec<(String, usize, usize, usize)> = Vec::new();
    let mut has_loops = false;

    let mut declare = |name: &str| {
        if !names.iter().any(|n| n == name) {
            names.push(name.to_string());
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        let Some(&(head_col, head)) = tokens.first() else { continue };
        let fail = |col: usize, msg: String| Err(ParseError { line, col, msg });
        let arg = |i: usize| -> Result<(usize, &str), ParseError> {
            tokens.get(i).copied().ok_or(ParseError {
                line,
                col: body.len() + 1,
                msg: format!("directive {head:?} is missing its argument {i}"),
            })
        };
        let no_extra = |n: usize| -> Result<(), ParseError> {
            match tokens.get(n) {
                Some(&(col, tok)) => Err(ParseError {
                    line,
                    col: col + 1,
                    msg: format!("unexpected trailing token {tok:?}"),
                }),
                None => Ok(()),
            }
        };
        match head {
            "v" => {
                let (_, name) = arg(1)?;
                no_extra(2)?;
                declare(name);
            }
            "e" => {
                let (ucol, u) = arg(1)?;
                let (vcol, v) = arg(2)?;
                no_extra(3)?;
                if u == v {
                    return fail(vcol + 1, format!("edge endpoints must differ, got {u:?} twice"));
                }
                let key = (u.min(v).to_string(), u.max(v).to_string());
                if !edge_keys.insert(key) {
                    return fail(ucol + 1, format!("duplicate edge {u:?} {v:?}"));
                }
                declare(u);
                declare(v);
                edges.push((u.to_string(), v.to_string()));
            }
            "loops" => {
                let (vcol, v) = arg(1)?;
                let (kcol, k) = arg(2)?;
                no_extra(3)?;
                let count: usize = match k.parse() {
                    Ok(c) => c,
                    Err(_) => {
                        return fail(kcol + 1, format!("loop count must be a number, got {k:?}"))
                    }
                };
                has_loops = true;
                loop_lines.push((v.to_string(), count, line, vcol + 1));
            }
            other => {
                return fail(
                    head_col + 1,
                    format!("unknown directive {other:?} (expected v, e, or loops)"),
                );
            }
        }
    }

    let mut loops: Vec<(String, usize)> = Vec::new();
    for (v, count, line, col) in loop_lines {
        if !names.iter().any(|n| *n == v) {
            return Err(ParseError {
                line,
                col,
                msg: format!("loops annotation names an undeclared vertex {v:?}"),
            });
        }
        if loops.iter().any(|(n, _)| *n == v) {
            return Err(ParseError {
                line,
                col,
                msg: format!("vertex {v:?} has more than one loops annotation"),
            });
        }
        loops.push((v, count));
    }
    Ok((names, edges, loops, has_loops))
}

/// Whitespace-splits a line, keeping each token's byte offset for column
/// diagnostics.
fn tokenize(body: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out
}
