//! Text formats: graphs (with optional interval and label sections), vertex
//! sets, 3-DM instances, clique trees and matchings.
//!
//! Graph files:
//!
//! ```text
//! c comment
//! p <n> <m>
//! e <u> <v> [k]
//! i <v> <l> <r>
//! v <v> <B|R> <s>
//! ```
//!
//! Edges come first and keep their order (it fixes edge ids). Interval lines
//! must cover every vertex when present; label lines default to `B 0` and
//! edges without `k` default to `2`.

use std::fmt::Write as _;
use std::num::ParseIntError;

use lved_core::exact::{ThreeDmError, ThreeDmInstance};
use lved_core::graph::{Graph, GraphError, VertexSet};
use lved_core::interval::{Endpoint, IntervalError, IntervalRepresentation};
use lved_core::labels::{LabelError, LabeledBlockGraph, Tag};
use lved_core::reduction::{CliqueTree, ReductionOutput};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Number { line: usize, source: ParseIntError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    ThreeDm(#[from] ThreeDmError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn int<T: std::str::FromStr<Err = ParseIntError>>(line: usize, tok: Option<&str>) -> Result<T, FormatError> {
    tok.ok_or_else(|| syntax(line, "missing field"))?.parse().map_err(|source| FormatError::Number { line, source })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(t) if t.starts_with('c') => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub intervals: Option<IntervalRepresentation>,
    /// Present when the file carried any `v` line or edge label.
    pub labels: Option<LabeledBlockGraph>,
}

impl GraphFile {
    pub fn plain(graph: Graph) -> Self {
        GraphFile { graph, intervals: None, labels: None }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut ks: Vec<Option<u8>> = Vec::new();
    let mut ivs: Vec<(usize, usize, Endpoint, Endpoint)> = Vec::new();
    let mut vlabels: Vec<(usize, usize, Tag, u32)> = Vec::new();
    for (line, toks) in records(text) {
        let mut it = toks.iter().copied();
        let kind = it.next().unwrap_or_default();
        if header.is_none() && kind != "p" {
            return Err(syntax(line, "expected `p <n> <m>` before any record"));
        }
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate `p` line"));
                }
                header = Some((int(line, it.next())?, int(line, it.next())?));
            }
            "e" => {
                edges.push((int(line, it.next())?, int(line, it.next())?));
                ks.push(match it.next() {
                    Some(t) => Some(int(line, Some(t))?),
                    None => None,
                });
            }
            "i" => {
                let v = int(line, it.next())?;
                let l = parse_rational(line, it.next())?;
                let r = parse_rational(line, it.next())?;
                ivs.push((line, v, l, r));
            }
            "v" => {
                let v = int(line, it.next())?;
                let t = match it.next() {
                    Some("B") => Tag::B,
                    Some("R") => Tag::R,
                    _ => return Err(syntax(line, "vertex tag must be B or R")),
                };
                vlabels.push((line, v, t, int(line, it.next())?));
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
        if it.next().is_some() {
            return Err(syntax(line, "trailing fields"));
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(0, "missing `p` line"))?;
    if edges.len() != m {
        return Err(syntax(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    let graph = Graph::new(n, &edges)?;
    if graph.edge_count() != m {
        return Err(syntax(0, "duplicate edges"));
    }

    let intervals = if ivs.is_empty() {
        None
    } else {
        let zero = Endpoint::from_integer(0);
        let mut l = vec![None; n];
        let mut r = vec![zero; n];
        for &(line, v, a, b) in &ivs {
            if v >= n || l[v].is_some() {
                return Err(syntax(line, format!("interval for vertex {v} is out of range or repeated")));
            }
            l[v] = Some(a);
            r[v] = b;
        }
        let l: Option<Vec<Endpoint>> = l.into_iter().collect();
        let l = l.ok_or_else(|| syntax(0, "interval section must cover every vertex"))?;
        Some(IntervalRepresentation::new(l, r)?)
    };

    let labels = if vlabels.is_empty() && ks.iter().all(Option::is_none) {
        None
    } else {
        let mut t = vec![Tag::B; n];
        let mut s = vec![0; n];
        for &(line, v, tag, dem) in &vlabels {
            if v >= n {
                return Err(syntax(line, format!("label for vertex {v} is out of range")));
            }
            t[v] = tag;
            s[v] = dem;
        }
        let k = ks.iter().map(|k| k.unwrap_or(2)).collect();
        Some(LabeledBlockGraph::new(graph.clone(), t, s, k)?)
    };
    Ok(GraphFile { graph, intervals, labels })
}

/// Decimal (`-1.25`), fraction (`5/4`) or integer.
pub fn parse_rational(line: usize, tok: Option<&str>) -> Result<Endpoint, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing endpoint"))?;
    let bad = || syntax(line, format!("bad endpoint `{tok}`"));
    if let Some((a, b)) = tok.split_once('/') {
        let a: i64 = a.parse().map_err(|_| bad())?;
        let b: i64 = b.parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Endpoint::new(a, b));
    }
    let (neg, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !whole.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let x = Endpoint::new(num, den);
    Ok(if neg { -x } else { x })
}

/// Exact decimal when the denominator allows it, `a/b` otherwise.
pub fn format_rational(x: Endpoint) -> String {
    let (num, den) = (*x.numer(), *x.denom());
    if den == 1 {
        return num.to_string();
    }
    let mut d = den;
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    let places = twos.max(fives);
    let scaled = (d == 1).then(|| 10i64.checked_pow(places)).flatten().and_then(|p| num.checked_mul(p / den));
    match scaled {
        Some(s) => {
            let sign = if s < 0 { "-" } else { "" };
            let s = s.unsigned_abs();
            let p = 10u64.pow(places);
            format!("{sign}{}.{:0width$}", s / p, s % p, width = places as usize)
        }
        None => format!("{num}/{den}"),
    }
}

pub fn write_graph(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match &file.labels {
            Some(lg) => writeln!(out, "e {u} {v} {}", lg.k[e]).unwrap(),
            None => writeln!(out, "e {u} {v}").unwrap(),
        }
    }
    if let Some(iv) = &file.intervals {
        for v in 0..g.vertex_count() {
            writeln!(out, "i {v} {} {}", format_rational(iv.left(v)), format_rational(iv.right(v))).unwrap();
        }
    }
    if let Some(lg) = &file.labels {
        for v in 0..g.vertex_count() {
            writeln!(out, "v {v} {} {}", lg.t[v], lg.s[v]).unwrap();
        }
    }
    out
}

/// Labels of a (sub)graph as `v <id> <t> <s>` / `e <u> <v> <k>` records,
/// with vertex ids translated through `ids`.
pub fn write_labels(lg: &LabeledBlockGraph, ids: &[usize]) -> String {
    let mut out = String::new();
    for v in 0..lg.base.vertex_count() {
        writeln!(out, "v {} {} {}", ids[v], lg.t[v], lg.s[v]).unwrap();
    }
    for (e, &(a, b)) in lg.base.edges().iter().enumerate() {
        writeln!(out, "e {} {} {}", ids[a], ids[b], lg.k[e]).unwrap();
    }
    out
}

/// One vertex id per line.
pub fn parse_set(text: &str) -> Result<VertexSet, FormatError> {
    let mut s = VertexSet::new();
    for (line, toks) in records(text) {
        if toks.len() != 1 {
            return Err(syntax(line, "expected one vertex id per line"));
        }
        s.insert(int(line, Some(toks[0]))?);
    }
    Ok(s)
}

pub fn write_set(s: &VertexSet) -> String {
    s.iter().map(|v| format!("{v}\n")).collect()
}

/// `q <q> <p>` followed by `p` lines `t <u> <v> <w>`.
pub fn parse_3dm(text: &str) -> Result<ThreeDmInstance, FormatError> {
    let mut header = None;
    let mut triples = Vec::new();
    for (line, toks) in records(text) {
        let mut it = toks.iter().copied();
        match it.next() {
            Some("q") if header.is_none() => header = Some((int::<usize>(line, it.next())?, int::<usize>(line, it.next())?)),
            Some("t") if header.is_some() => {
                triples.push((int(line, it.next())?, int(line, it.next())?, int(line, it.next())?));
            }
            _ => return Err(syntax(line, "expected `q <q> <p>` then `t <u> <v> <w>` lines")),
        }
        if it.next().is_some() {
            return Err(syntax(line, "trailing fields"));
        }
    }
    let (q, p) = header.ok_or_else(|| syntax(0, "missing `q` line"))?;
    if triples.len() != p {
        return Err(syntax(0, format!("header announces {p} triples, found {}", triples.len())));
    }
    Ok(ThreeDmInstance::new(q, triples)?)
}

pub fn write_3dm(inst: &ThreeDmInstance) -> String {
    let mut out = format!("q {} {}\n", inst.q(), inst.p());
    for &(u, v, w) in inst.triples() {
        writeln!(out, "t {u} {v} {w}").unwrap();
    }
    out
}

/// Triple indices, one per line.
pub fn parse_matching(text: &str) -> Result<Vec<usize>, FormatError> {
    Ok(parse_set(text)?.into_vec())
}

/// `n <name>...` per node, then `t <i> <j>` per tree edge.
pub fn write_tree(tree: &CliqueTree, names: &[String]) -> String {
    let mut out = String::new();
    for node in &tree.nodes {
        out.push('n');
        for &v in node {
            out.push(' ');
            out.push_str(&names[v]);
        }
        out.push('\n');
    }
    for &(a, b) in &tree.edges {
        writeln!(out, "t {a} {b}").unwrap();
    }
    out
}

pub fn parse_tree(text: &str, names: &[String]) -> Result<CliqueTree, FormatError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line, toks) in records(text) {
        match toks[0] {
            "n" => {
                let mut members = Vec::with_capacity(toks.len() - 1);
                for name in &toks[1..] {
                    let id = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| syntax(line, format!("unknown vertex `{name}`")))?;
                    members.push(id);
                }
                members.sort_unstable();
                nodes.push(members);
            }
            "t" if toks.len() == 3 => edges.push((int(line, Some(toks[1]))?, int(line, Some(toks[2]))?)),
            _ => return Err(syntax(line, "expected `n <names>` or `t <i> <j>`")),
        }
    }
    Ok(CliqueTree { nodes, edges })
}

/// The gadget graph with its vertex names as comments.
pub fn write_reduction_graph(out: &ReductionOutput) -> String {
    let mut text = String::new();
    writeln!(text, "c target {}", out.target_k).unwrap();
    for (v, name) in out.names.iter().enumerate() {
        writeln!(text, "c name {v} {name}").unwrap();
    }
    text.push_str(&write_graph(&GraphFile::plain(out.graph.clone())));
    text
}
