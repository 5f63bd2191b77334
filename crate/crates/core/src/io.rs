//! Edge-list and DIMACS readers and writers.
//!
//! Edge-list: first data line `n m`, then `m` lines `u v` with 0-based
//! endpoints; `#` starts a comment. DIMACS: `c` comment lines, one
//! `p edge n m` line, then `e u v` lines with 1-based endpoints.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            "dimacs" | "col" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format '{other}'")),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("expected {what}, found '{tok}'")))
}

struct Builder {
    n: usize,
    g: Graph,
}

impl Builder {
    fn edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(err(
                line,
                format!("vertex index out of range for n = {}", self.n),
            ));
        }
        if u == v {
            return Err(err(line, format!("loop edge at vertex {u}")));
        }
        self.g.add_edge(u, v);
        Ok(())
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut builder: Option<Builder> = None;
    let mut declared_m = 0;
    let mut seen_m = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(line, format!("expected two fields, found {}", toks.len())));
        }
        match builder.as_mut() {
            None => {
                let n = parse_num(toks[0], line, "vertex count")?;
                declared_m = parse_num(toks[1], line, "edge count")?;
                builder = Some(Builder {
                    n,
                    g: Graph::empty(n),
                });
            }
            Some(b) => {
                let u = parse_num(toks[0], line, "vertex")?;
                let v = parse_num(toks[1], line, "vertex")?;
                b.edge(u, v, line)?;
                seen_m += 1;
            }
        }
    }
    let b = builder.ok_or_else(|| err(last_line.max(1), "missing 'n m' header"))?;
    if seen_m != declared_m {
        return Err(err(
            last_line,
            format!("header declares {declared_m} edges, found {seen_m}"),
        ));
    }
    Ok(b.g)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut builder: Option<Builder> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if builder.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                if toks.len() != 4 || !matches!(toks[1], "edge" | "col") {
                    return Err(err(line, "expected 'p edge <n> <m>'"));
                }
                let n = parse_num(toks[2], line, "vertex count")?;
                parse_num(toks[3], line, "edge count")?;
                builder = Some(Builder {
                    n,
                    g: Graph::empty(n),
                });
            }
            "e" => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| err(line, "edge before problem line"))?;
                if toks.len() != 3 {
                    return Err(err(line, "expected 'e <u> <v>'"));
                }
                let u = parse_num(toks[1], line, "vertex")?;
                let v = parse_num(toks[2], line, "vertex")?;
                if u == 0 || v == 0 {
                    return Err(err(line, "DIMACS vertices are 1-based"));
                }
                b.edge(u - 1, v - 1, line)?;
            }
            other => return Err(err(line, format!("unknown line type '{other}'"))),
        }
    }
    builder
        .map(|b| b.g)
        .ok_or_else(|| err(last_line.max(1), "missing problem line"))
}

pub fn render(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => render_edge_list(g),
        Format::Dimacs => render_dimacs(g),
    }
}

pub fn render_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn render_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
