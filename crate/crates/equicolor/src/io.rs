//! Graph and coloring files.
//!
//! Graphs are read from DIMACS `.col` (`p edge n m`, `e u v` with 1-based
//! ids, `c` comments) or from edge JSON `{"n": 3, "edges": [[0, 1], [1, 2]]}`.
//! Colorings use `{"k": 3, "assignment": [0, 1, null], "counts": [1, 1, 0]}`.

use crate::coloring::{Color, ListAssignment, PartialColoring};
use crate::graph::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum IoError {
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("header declares {declared} edges but the file lists {actual}")]
    HeaderMismatch { declared: usize, actual: usize },
    #[error("invalid JSON: {message}")]
    Json { message: String },
    #[error("unknown graph format {name:?}")]
    UnknownFormat { name: String },
    #[error(transparent)]
    #[serde(untagged)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Dimacs,
    EdgeJson,
}

impl FromStr for GraphFormat {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" | "col" => Ok(GraphFormat::Dimacs),
            "edge-json" | "json" => Ok(GraphFormat::EdgeJson),
            _ => Err(IoError::UnknownFormat { name: s.to_string() }),
        }
    }
}

impl GraphFormat {
    /// `.json` means edge JSON; anything else is read as DIMACS.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::EdgeJson,
            _ => GraphFormat::Dimacs,
        }
    }
}

fn json_err(e: serde_json::Error) -> IoError {
    IoError::Json { message: e.to_string() }
}

fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|e| IoError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Parses DIMACS text. Repeated edges (either orientation) are merged but
/// still count toward the header check.
pub fn parse_dimacs(text: &str) -> Result<Graph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut listed = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| IoError::ParseError { line, message };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(err("second problem line".into()));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "edges" | "col") {
                    return Err(err(format!("expected `p edge <n> <m>`, found {raw:?}")));
                }
                let n = fields[2].parse().map_err(|_| err(format!("bad vertex count {:?}", fields[2])))?;
                let m = fields[3].parse().map_err(|_| err(format!("bad edge count {:?}", fields[3])))?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err("edge before the problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err(format!("expected `e <u> <v>`, found {raw:?}")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                    let id: usize = f.parse().map_err(|_| err(format!("bad vertex id {f:?}")))?;
                    if id == 0 || id > n {
                        return Err(err(format!("vertex id {id} outside 1..={n}")));
                    }
                    *slot = id - 1;
                }
                if ends[0] == ends[1] {
                    return Err(err(format!("self-loop at vertex {}", ends[0] + 1)));
                }
                listed += 1;
                edges.push((ends[0].min(ends[1]), ends[0].max(ends[1])));
            }
            Some(other) => return Err(err(format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or(IoError::ParseError { line: 0, message: "missing problem line".into() })?;
    if m != listed {
        return Err(IoError::HeaderMismatch { declared: m, actual: listed });
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(Graph::new(n, &edges)?)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_edge_json(text: &str) -> Result<Graph, IoError> {
    let parsed: EdgeJson = serde_json::from_str(text).map_err(json_err)?;
    Ok(Graph::new(parsed.n, &parsed.edges)?)
}

pub fn write_edge_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeJson { n: g.n(), edges: g.edges().collect() }).expect("plain data serializes")
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, IoError> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::EdgeJson => parse_edge_json(text),
    }
}

pub fn format_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dimacs => write_dimacs(g),
        GraphFormat::EdgeJson => write_edge_json(g),
    }
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph, IoError> {
    parse_graph(&read_text(path)?, format)
}

pub fn write_graph(path: &Path, g: &Graph, format: GraphFormat) -> Result<(), IoError> {
    write_text(path, &format_graph(g, format))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: usize,
    pub assignment: Vec<Option<Color>>,
    /// Ignored on input; recomputed from the assignment.
    #[serde(default)]
    pub counts: Vec<usize>,
}

impl ColoringFile {
    pub fn from_coloring(f: &PartialColoring) -> ColoringFile {
        ColoringFile { k: f.k(), assignment: f.assignment().to_vec(), counts: f.counts().to_vec() }
    }

    pub fn to_coloring(&self) -> Result<PartialColoring, IoError> {
        PartialColoring::from_assignment(self.k, self.assignment.clone())
            .map_err(|e| IoError::Json { message: e.to_string() })
    }
}

pub fn coloring_to_json(f: &PartialColoring) -> String {
    serde_json::to_string(&ColoringFile::from_coloring(f)).expect("plain data serializes")
}

pub fn parse_coloring(text: &str) -> Result<PartialColoring, IoError> {
    serde_json::from_str::<ColoringFile>(text).map_err(json_err)?.to_coloring()
}

pub fn read_coloring(path: &Path) -> Result<PartialColoring, IoError> {
    parse_coloring(&read_text(path)?)
}

/// List assignment with an optional seed coloring:
/// `{"lists": [[0, 1], [1, 2]], "seed": [0, null]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsFile {
    pub lists: Vec<Vec<Color>>,
    #[serde(default)]
    pub seed: Option<Vec<Option<Color>>>,
}

impl ListsFile {
    pub fn lists(&self) -> ListAssignment {
        ListAssignment::new(self.lists.clone())
    }

    /// The seed over the palette spanned by the lists and the seed itself.
    pub fn seed(&self) -> Result<PartialColoring, IoError> {
        let n = self.lists.len();
        let seed = self.seed.clone().unwrap_or_else(|| vec![None; n]);
        let k = self
            .lists
            .iter()
            .flatten()
            .chain(seed.iter().flatten())
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0);
        PartialColoring::from_assignment(k, seed).map_err(|e| IoError::Json { message: e.to_string() })
    }
}

pub fn parse_lists(text: &str) -> Result<ListsFile, IoError> {
    serde_json::from_str(text).map_err(json_err)
}

pub fn read_lists(path: &Path) -> Result<ListsFile, IoError> {
    parse_lists(&read_text(path)?)
}
