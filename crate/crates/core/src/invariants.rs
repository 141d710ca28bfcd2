//! Graph invariants for comparing graphs across descriptions, and the DOT
//! and JSON export formats.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gamma::{GammaGraph, InterpretationPolicy};

/// Vertex degrees sorted ascending. Repeats matter, so this is a sorted list
/// rather than a set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&[usize]> for DegreeSequence {
    fn from(d: &[usize]) -> Self {
        DegreeSequence::new(d.to_vec())
    }
}

impl PartialEq<[usize]> for DegreeSequence {
    fn eq(&self, other: &[usize]) -> bool {
        self.0 == other
    }
}

impl<const N: usize> PartialEq<[usize; N]> for DegreeSequence {
    fn eq(&self, other: &[usize; N]) -> bool {
        self.0 == other
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("diameter is undefined on a disconnected graph")]
    Disconnected,
    #[error("line {line}: {message}")]
    DotSyntax { line: usize, message: String },
}

pub fn degree_sequence(g: &GammaGraph) -> DegreeSequence {
    DegreeSequence::new((0..g.vertex_count()).map(|v| g.degree(v)).collect())
}

pub fn edge_count(g: &GammaGraph) -> usize {
    g.edges().len()
}

fn bfs_distances(g: &GammaGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn is_connected(g: &GammaGraph) -> bool {
    g.vertex_count() == 0 || bfs_distances(g, 0).iter().all(Option::is_some)
}

/// Largest shortest-path distance, by breadth-first search from every vertex.
pub fn diameter(g: &GammaGraph) -> Result<usize, InvariantError> {
    let mut best = 0;
    for v in 0..g.vertex_count() {
        for d in bfs_distances(g, v) {
            best = best.max(d.ok_or(InvariantError::Disconnected)?);
        }
    }
    Ok(best)
}

/// DOT text with one node per vertex (index order) and one line per edge
/// (lexicographic index order). Node names are the vertex labels.
pub fn export_dot(g: &GammaGraph) -> String {
    let mut out = String::from("graph gamma {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {};\n", quote(&g.label_string(v))));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!(
            "  {} -- {};\n",
            quote(&g.label_string(u)),
            quote(&g.label_string(v))
        ));
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes and edges of a graph written by [`export_dot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// Reads back the subset of DOT that [`export_dot`] writes.
pub fn parse_dot(text: &str) -> Result<DotGraph, InvariantError> {
    let err = |line: usize, message: &str| InvariantError::DotSyntax {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, "graph gamma {")) => {}
        Some((n, _)) => return Err(err(n, "expected 'graph gamma {'")),
        None => return Err(err(1, "empty input")),
    }
    let mut graph = DotGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    let mut closed = false;
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        if closed {
            return Err(err(n, "content after closing brace"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let body = line.strip_suffix(';').ok_or_else(|| err(n, "missing ';'"))?;
        let (first, rest) = unquote(body).ok_or_else(|| err(n, "expected a quoted name"))?;
        let rest = rest.trim();
        if rest.is_empty() {
            graph.nodes.push(first);
        } else {
            let rest = rest.strip_prefix("--").ok_or_else(|| err(n, "expected '--'"))?;
            let (second, tail) =
                unquote(rest.trim()).ok_or_else(|| err(n, "expected a quoted name"))?;
            if !tail.trim().is_empty() {
                return Err(err(n, "trailing text after edge"));
            }
            graph.edges.push((first, second));
        }
    }
    if !closed {
        return Err(err(text.lines().count(), "missing closing brace"));
    }
    Ok(graph)
}

fn unquote(s: &str) -> Option<(String, &str)> {
    let mut chars = s.strip_prefix('"')?.char_indices();
    let mut out = String::new();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &s[i + 2..])),
            c => out.push(c),
        }
    }
    None
}

/// Top-level JSON report: `{command, policy, inputs, results}`.
#[derive(Debug, Clone, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub command: &'a str,
    pub policy: Option<InterpretationPolicy>,
    pub inputs: &'a [String],
    pub results: T,
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the
/// result types, so output is byte-stable.
pub fn export_report<T: Serialize>(
    command: &str,
    policy: Option<&InterpretationPolicy>,
    inputs: &[String],
    results: &T,
) -> String {
    let report = Report {
        command,
        policy: policy.copied(),
        inputs,
        results,
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report types serialize");
    s.push('\n');
    s
}

/// Per-vertex view of a graph for reports.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<VertexSummary>,
    pub edges: Vec<[String; 2]>,
    pub edge_count: usize,
    pub degree_sequence: DegreeSequence,
    pub connected: bool,
    pub diameter: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexSummary {
    pub element: usize,
    pub word: String,
    pub degree: usize,
}

pub fn summarize(g: &GammaGraph) -> GraphSummary {
    GraphSummary {
        vertices: (0..g.vertex_count())
            .map(|v| VertexSummary {
                element: v,
                word: g.label_string(v),
                degree: g.degree(v),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| [g.label_string(u), g.label_string(v)])
            .collect(),
        edge_count: edge_count(g),
        degree_sequence: degree_sequence(g),
        connected: is_connected(g),
        diameter: diameter(g).ok(),
    }
}
