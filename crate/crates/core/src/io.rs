//! Edge-list text format and DOT export.
//!
//! ```text
//! # comment
//! directed 3 2
//! 0 1
//! 1 2
//! ```
//!
//! The header is `directed <n> <m>` or `undirected <n> <m>`, followed by
//! exactly `m` lines `<u> <v>`. Lines starting with `#` are ignored anywhere.

use std::fmt::Write as _;

use crate::digraph::{OrientedGraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Directed(OrientedGraph),
    Undirected(UndirectedGraph),
}

impl Graph {
    pub fn n(&self) -> usize {
        match self {
            Graph::Directed(g) => g.n(),
            Graph::Undirected(g) => g.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Graph::Directed(g) => g.m(),
            Graph::Undirected(g) => g.m(),
        }
    }

    pub fn to_edge_list(&self) -> String {
        match self {
            Graph::Directed(g) => write_directed(g),
            Graph::Undirected(g) => write_undirected(g),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Graph::Directed(g) => directed_dot(g),
            Graph::Undirected(g) => undirected_dot(g),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, got `{tok}`"),
        )
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(parse_err(
            hline,
            "header must be `directed|undirected <n> <m>`",
        ));
    }
    let directed = match toks[0] {
        "directed" => true,
        "undirected" => false,
        other => return Err(parse_err(hline, format!("unknown graph kind `{other}`"))),
    };
    let n = parse_usize(toks[1], hline)?;
    let m = parse_usize(toks[2], hline)?;

    let mut pairs = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lno, l) in lines {
        last_line = lno;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(lno, "edge line must be `<u> <v>`"));
        }
        pairs.push((parse_usize(toks[0], lno)?, parse_usize(toks[1], lno)?));
    }
    if pairs.len() != m {
        return Err(parse_err(
            last_line,
            format!("header announces {m} edges, found {}", pairs.len()),
        ));
    }
    let wrap = |e: Error| match e {
        Error::Parse { .. } => e,
        other => parse_err(hline, other.to_string()),
    };
    if directed {
        Ok(Graph::Directed(OrientedGraph::new(n, pairs).map_err(wrap)?))
    } else {
        Ok(Graph::Undirected(
            UndirectedGraph::new(n, pairs).map_err(wrap)?,
        ))
    }
}

pub fn parse_directed(text: &str) -> Result<OrientedGraph> {
    match parse_edge_list(text)? {
        Graph::Directed(g) => Ok(g),
        Graph::Undirected(_) => Err(parse_err(1, "expected a directed graph")),
    }
}

pub fn parse_undirected(text: &str) -> Result<UndirectedGraph> {
    match parse_edge_list(text)? {
        Graph::Undirected(g) => Ok(g),
        Graph::Directed(_) => Err(parse_err(1, "expected an undirected graph")),
    }
}

fn write_pairs(kind: &str, n: usize, pairs: &[(Vertex, Vertex)]) -> String {
    let mut s = format!("{kind} {n} {}\n", pairs.len());
    for &(u, v) in pairs {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write_directed(g: &OrientedGraph) -> String {
    write_pairs("directed", g.n(), g.arcs())
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    write_pairs("undirected", g.n(), g.edges())
}

fn dot(kind: &str, op: &str, n: usize, pairs: &[(Vertex, Vertex)]) -> String {
    let mut s = format!("{kind} {{\n");
    for v in 0..n {
        writeln!(s, "  {v};").unwrap();
    }
    for &(u, v) in pairs {
        writeln!(s, "  {u} {op} {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn directed_dot(g: &OrientedGraph) -> String {
    dot("digraph", "->", g.n(), g.arcs())
}

pub fn undirected_dot(g: &UndirectedGraph) -> String {
    dot("graph", "--", g.n(), g.edges())
}
