//! Text and JSON file formats. Vertices are 1-based on disk.
//!
//! Text formats, one record per line, `#` starts a comment:
//!
//! ```text
//! n 4          b 2 3        code 0101
//! 1 2          1 1
//! 2 3          2 3
//! ```
//!
//! The first is a graph on n vertices with one edge per line, the second a bipartite
//! graph with parts of sizes 2 and 3 (edge `i j` joins V1 vertex i to V2 vertex j),
//! the third a creation code α₂…α_n (`code` alone is the one-vertex graph).

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{CreationCode, Graph};

/// Anything a graph file can hold.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphFile {
    Graph(Graph),
    Bipartite(BipartiteGraph),
    Code(CreationCode),
}

impl GraphFile {
    /// The one-part graph, decoding codes.
    pub fn into_graph(self) -> Result<Graph> {
        match self {
            GraphFile::Graph(g) => Ok(g),
            GraphFile::Code(c) => Ok(c.decode()),
            GraphFile::Bipartite(_) => Err(Error::Unsupported(
                "expected a one-part graph, found a bipartite graph".into(),
            )),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum JsonFile {
    Graph { n: usize, edges: Vec<[usize; 2]> },
    Bipartite { n1: usize, n2: usize, edges: Vec<[usize; 2]> },
    Code { n: usize, code: String },
}

fn one_based(edges: Vec<(usize, usize)>) -> Vec<[usize; 2]> {
    edges.into_iter().map(|(u, v)| [u + 1, v + 1]).collect()
}

fn zero_based(edges: &[[usize; 2]]) -> Result<Vec<(usize, usize)>> {
    edges
        .iter()
        .map(|&[u, v]| {
            if u == 0 || v == 0 {
                Err(Error::Format("vertices are numbered from 1".into()))
            } else {
                Ok((u - 1, v - 1))
            }
        })
        .collect()
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    s
}

pub fn bipartite_to_text(b: &BipartiteGraph) -> String {
    let mut s = format!("b {} {}\n", b.n1(), b.n2());
    for (i, j) in b.edges() {
        s.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    s
}

pub fn code_to_text(c: &CreationCode) -> String {
    if c.bits().is_empty() {
        "code\n".into()
    } else {
        format!("code {c}\n")
    }
}

pub fn to_text(f: &GraphFile) -> String {
    match f {
        GraphFile::Graph(g) => graph_to_text(g),
        GraphFile::Bipartite(b) => bipartite_to_text(b),
        GraphFile::Code(c) => code_to_text(c),
    }
}

pub fn to_json(f: &GraphFile) -> String {
    let j = match f {
        GraphFile::Graph(g) => JsonFile::Graph {
            n: g.n(),
            edges: one_based(g.edges()),
        },
        GraphFile::Bipartite(b) => JsonFile::Bipartite {
            n1: b.n1(),
            n2: b.n2(),
            edges: one_based(b.edges()),
        },
        GraphFile::Code(c) => JsonFile::Code {
            n: c.order(),
            code: c.to_string(),
        },
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Format(format!("line {line}: expected a number, found '{tok}'")))
}

/// Reads any of the text or JSON formats.
pub fn parse(input: &str) -> Result<GraphFile> {
    if input.trim_start().starts_with('{') {
        return parse_json(input);
    }
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty input".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let pairs = |lines: &mut dyn Iterator<Item = (usize, &str)>| -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for (no, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 2 {
                return Err(Error::Format(format!("line {no}: expected two vertices")));
            }
            let u = parse_usize(t[0], no)?;
            let v = parse_usize(t[1], no)?;
            if u == 0 || v == 0 {
                return Err(Error::Format(format!("line {no}: vertices are numbered from 1")));
            }
            out.push((u - 1, v - 1));
        }
        Ok(out)
    };
    match toks.as_slice() {
        ["n", n] => {
            let n = parse_usize(n, hline)?;
            let edges = pairs(&mut lines)?;
            Ok(GraphFile::Graph(Graph::from_edges(n, &edges)?))
        }
        ["b", n1, n2] => {
            let n1 = parse_usize(n1, hline)?;
            let n2 = parse_usize(n2, hline)?;
            let edges = pairs(&mut lines)?;
            Ok(GraphFile::Bipartite(BipartiteGraph::from_edges(n1, n2, &edges)?))
        }
        ["code"] | ["code", _] => {
            if let Some((no, _)) = lines.next() {
                return Err(Error::Format(format!("line {no}: unexpected content after code")));
            }
            let bits = toks.get(1).copied().unwrap_or("");
            Ok(GraphFile::Code(bits.parse()?))
        }
        _ => Err(Error::Format(format!(
            "line {hline}: expected 'n <count>', 'b <n1> <n2>' or 'code <bits>'"
        ))),
    }
}

fn parse_json(input: &str) -> Result<GraphFile> {
    let j: JsonFile =
        serde_json::from_str(input).map_err(|e| Error::Format(format!("json: {e}")))?;
    match j {
        JsonFile::Graph { n, edges } => Ok(GraphFile::Graph(Graph::from_edges(n, &zero_based(&edges)?)?)),
        JsonFile::Bipartite { n1, n2, edges } => Ok(GraphFile::Bipartite(BipartiteGraph::from_edges(
            n1,
            n2,
            &zero_based(&edges)?,
        )?)),
        JsonFile::Code { n, code } => {
            let c: CreationCode = code.parse()?;
            if c.order() != n {
                return Err(Error::Format(format!(
                    "code of length {} does not describe {n} vertices",
                    code.len()
                )));
            }
            Ok(GraphFile::Code(c))
        }
    }
}
