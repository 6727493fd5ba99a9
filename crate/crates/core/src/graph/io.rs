//! Edge-list text and JSON encodings of [`Graph`].
//!
//! Text: first line `n m`, then `m` lines `u v`. JSON: `{"n":..,"edges":[[u,v],..]}`.
//! Writers always emit edges as `u < v` in lexicographic order, so a
//! written file reads back and re-writes byte for byte.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&doc).expect("graph serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(doc.n, &edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in {line:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("{line:?}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in {line:?}")));
    }
    Ok((a, b))
}
