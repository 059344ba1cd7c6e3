//! Edge-list and DIMACS readers/writers.
//!
//! Edge list: header `n m`, then `m` lines `u v` with 0-indexed ids; `#` starts a comment.
//! DIMACS: `p edge n m`, then `e u v` with 1-indexed ids; `c` lines are comments.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "el" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(Error::InvalidArgument(format!("unknown graph format `{other}`"))),
        }
    }
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token.parse().map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

/// Validates one edge (already shifted to 0-based) and inserts it.
fn push_edge(b: &mut GraphBuilder, line: usize, raw: (usize, usize), shift: usize) -> Result<()> {
    let n = b.n();
    for id in [raw.0, raw.1] {
        if id < shift || id - shift >= n {
            return Err(Error::VertexRange { line, vertex: id, n });
        }
    }
    let (u, v) = (raw.0 - shift, raw.1 - shift);
    if u == v {
        return Err(Error::SelfLoop { line, vertex: raw.0 });
    }
    b.add_edge(u, v);
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut builder: Option<GraphBuilder> = None;
    let mut declared = 0;
    let mut seen = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let a = tokens.next();
        let b = tokens.next();
        if tokens.next().is_some() {
            return Err(Error::parse(line, "expected exactly two fields"));
        }
        match builder.as_mut() {
            None => {
                let n = parse_count(a, line, "vertex count")?;
                declared = parse_count(b, line, "edge count")?;
                builder = Some(GraphBuilder::new(n));
            }
            Some(g) => {
                let u = parse_count(a, line, "vertex id")?;
                let v = parse_count(b, line, "vertex id")?;
                push_edge(g, line, (u, v), 0)?;
                seen += 1;
            }
        }
    }
    let builder = builder.ok_or_else(|| Error::parse(last_line.max(1), "missing `n m` header"))?;
    if seen != declared {
        return Err(Error::parse(last_line, format!("header declares {declared} edges, found {seen}")));
    }
    Ok(builder.build())
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut builder: Option<GraphBuilder> = None;
    let mut declared = 0;
    let mut seen = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if builder.is_some() {
                    return Err(Error::parse(line, "duplicate problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(Error::parse(line, "expected `p edge n m`"));
                }
                let n = parse_count(tokens.next(), line, "vertex count")?;
                declared = parse_count(tokens.next(), line, "edge count")?;
                builder = Some(GraphBuilder::new(n));
            }
            Some("e") => {
                let g = builder.as_mut().ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                let u = parse_count(tokens.next(), line, "vertex id")?;
                let v = parse_count(tokens.next(), line, "vertex id")?;
                push_edge(g, line, (u, v), 1)?;
                seen += 1;
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
        if tokens.next().is_some() {
            return Err(Error::parse(line, "trailing fields"));
        }
    }
    let builder = builder.ok_or_else(|| Error::parse(last_line.max(1), "missing `p edge n m` line"))?;
    if seen != declared {
        return Err(Error::parse(last_line, format!("problem line declares {declared} edges, found {seen}")));
    }
    Ok(builder.build())
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn format_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Dimacs => parse_dimacs(&text),
    }
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>, format: GraphFormat) -> Result<()> {
    let path = path.as_ref();
    let text = match format {
        GraphFormat::EdgeList => format_edge_list(g),
        GraphFormat::Dimacs => format_dimacs(g),
    };
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_owned(), source })
}
