//! Multicolourings of a host graph, their component hypergraphs, and the
//! `r`/`σ` set functions used by decycling.

mod hypergraph;
mod sigma;

pub use hypergraph::{
    component_hypergraph, is_hyperforest, k_hypergraph, ComponentHypergraph, HyperEdge, Origin,
};
pub use sigma::{sigma_eval, sigma_maximal, SigmaContext, SigmaGuard, SigmaValue};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ge_decompose, nu, Graph};

/// A `q`-multicolouring `(G_0, G_1, ..., G_q)` of a host graph. Layer 0 holds
/// the uncoloured edges; an edge may sit in several colour layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    host: Graph,
    layers: Vec<Graph>,
}

#[derive(Serialize, Deserialize)]
struct ColouredJson {
    n: usize,
    q: usize,
    layers: Vec<Vec<[usize; 2]>>,
}

impl ColouredGraph {
    /// `layers[0]` is the uncoloured layer; every layer must be a spanning
    /// subgraph of `host`, and there must be at least one colour.
    pub fn new(host: Graph, layers: Vec<Graph>) -> Result<Self> {
        if layers.len() < 2 {
            return Err(Error::InvalidInput(
                "need the uncoloured layer and at least one colour".into(),
            ));
        }
        for (j, layer) in layers.iter().enumerate() {
            if !layer.is_subgraph_of(&host) {
                return Err(Error::InvalidInput(format!(
                    "layer {j} contains edges outside the host"
                )));
            }
        }
        Ok(ColouredGraph { host, layers })
    }

    /// Fully-coloured colouring with one colour per host edge; `colours[i]`
    /// (in `1..=q`) colours the `i`-th edge of `host.edges()`.
    pub fn from_edge_colours(host: Graph, q: usize, colours: &[usize]) -> Result<Self> {
        if colours.len() != host.m() {
            return Err(Error::InvalidInput(format!(
                "{} colours for {} edges",
                colours.len(),
                host.m()
            )));
        }
        let mut layers = vec![Graph::new(host.n()); q + 1];
        for ((u, v), &c) in host.edges().zip(colours) {
            if c == 0 || c > q {
                return Err(Error::InvalidInput(format!("colour {c} outside 1..={q}")));
            }
            layers[c].add_edge(u, v)?;
        }
        ColouredGraph::new(host, layers)
    }

    /// Colouring whose host is the union of the given layers.
    pub fn from_layers(n: usize, layers: Vec<Graph>) -> Result<Self> {
        let mut host = Graph::new(n);
        for layer in &layers {
            host = host.union(layer)?;
        }
        ColouredGraph::new(host, layers)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    /// Number of colours (layer 0 excluded).
    pub fn q(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, j: usize) -> &Graph {
        &self.layers[j]
    }

    pub fn layers(&self) -> &[Graph] {
        &self.layers
    }

    /// Colour layers `G_1..G_q`.
    pub fn colour_layers(&self) -> &[Graph] {
        &self.layers[1..]
    }

    /// No uncoloured edges and every host edge carries some colour.
    pub fn is_fully_coloured(&self) -> bool {
        self.layers[0].m() == 0
            && self
                .host
                .edges()
                .all(|(u, v)| self.colour_layers().iter().any(|l| l.has_edge(u, v)))
    }

    /// `E_0` is exactly the host edges touching `s`, and no such edge is
    /// coloured.
    pub fn is_s_proper(&self, s: &[usize]) -> bool {
        let in_s = crate::graph::vec_to_mask(self.n(), s);
        let incident = |u: usize, v: usize| in_s[u] || in_s[v];
        let e0 = &self.layers[0];
        self.host
            .edges()
            .all(|(u, v)| e0.has_edge(u, v) == incident(u, v))
            && e0
                .edges()
                .all(|(u, v)| self.colour_layers().iter().all(|l| !l.has_edge(u, v)))
    }

    /// Every colour layer has an empty `C` part.
    pub fn is_ad_pure(&self) -> bool {
        self.colour_layers()
            .iter()
            .all(|l| ge_decompose(l).is_ad_pure())
    }

    /// Every colour layer has empty `C` and `A` parts.
    pub fn is_d_pure(&self) -> bool {
        self.colour_layers()
            .iter()
            .all(|l| ge_decompose(l).is_d_pure())
    }

    /// The connected components of the colour layers form a hyperforest.
    pub fn is_acyclic(&self) -> bool {
        is_hyperforest(&component_hypergraph(self))
    }

    /// D-pure and acyclic.
    pub fn is_d_acyclic(&self) -> bool {
        self.is_d_pure() && self.is_acyclic()
    }

    /// `(ν(G_1), ..., ν(G_q))`; layer 0 never counts.
    pub fn nu_vector(&self) -> Vec<usize> {
        self.colour_layers().iter().map(nu).collect()
    }

    /// Every colour `j` has `ν(G_j) < targets[j - 1]`: no colour reaches its
    /// target matching size.
    pub fn avoids(&self, targets: &[usize]) -> bool {
        targets.len() == self.q() && self.nu_vector().iter().zip(targets).all(|(v, t)| v < t)
    }

    pub fn nu_sigma(&self) -> usize {
        self.nu_vector().iter().sum()
    }

    /// Moves every host edge touching `s` out of the colour layers and into
    /// the uncoloured layer.
    pub fn uncolour(&self, s: &[usize]) -> ColouredGraph {
        let in_s = crate::graph::vec_to_mask(self.n(), s);
        let mut layers = self.layers.clone();
        for (u, v) in self.host.edges() {
            if in_s[u] || in_s[v] {
                layers[0].add_edge(u, v).expect("host edge");
                for layer in &mut layers[1..] {
                    layer.remove_edge(u, v);
                }
            }
        }
        ColouredGraph {
            host: self.host.clone(),
            layers,
        }
    }

    /// Restriction to the induced subgraph on `vertices`, relabelled as in
    /// [`Graph::induced`]; the table maps new labels to old.
    pub fn induced(&self, vertices: &[usize]) -> Result<(ColouredGraph, Vec<usize>)> {
        let (host, map) = self.host.induced(vertices)?;
        let layers = self
            .layers
            .iter()
            .map(|l| l.induced(&map).map(|(g, _)| g))
            .collect::<Result<Vec<_>>>()?;
        Ok((ColouredGraph { host, layers }, map))
    }

    pub fn to_json(&self) -> String {
        let doc = ColouredJson {
            n: self.n(),
            q: self.q(),
            layers: self
                .layers
                .iter()
                .map(|l| l.edges().map(|(u, v)| [u, v]).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("colouring serialisation cannot fail")
    }

    /// Parses the coloured-graph JSON. Without `host`, the host is the union
    /// of all layers; with one, layers holding non-host edges are rejected.
    pub fn from_json(text: &str, host: Option<&Graph>) -> Result<ColouredGraph> {
        let doc: ColouredJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.layers.len() != doc.q + 1 {
            return Err(Error::Parse(format!(
                "q = {} but {} layers given",
                doc.q,
                doc.layers.len()
            )));
        }
        let layers = doc
            .layers
            .iter()
            .map(|edges| {
                let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Graph::from_edges(doc.n, &pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        match host {
            Some(h) => {
                if h.n() != doc.n {
                    return Err(Error::InvalidInput(format!(
                        "host has {} vertices, colouring {}",
                        h.n(),
                        doc.n
                    )));
                }
                ColouredGraph::new(h.clone(), layers)
            }
            None => ColouredGraph::from_layers(doc.n, layers),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_one_colour() -> ColouredGraph {
        let host = Graph::complete(4);
        ColouredGraph::new(host.clone(), vec![Graph::new(4), host, Graph::new(4)]).unwrap()
    }

    #[test]
    fn nu_vector_examples() {
        let empty = ColouredGraph::new(Graph::new(3), vec![Graph::new(3); 3]).unwrap();
        assert_eq!(empty.nu_vector(), vec![0, 0]);
        let cg = k4_one_colour();
        assert_eq!(cg.nu_vector(), vec![2, 0]);
        assert_eq!(cg.nu_sigma(), 2);
        assert!(cg.is_fully_coloured());
    }

    #[test]
    fn uncolour_examples() {
        let cg = k4_one_colour();
        assert_eq!(cg.uncolour(&[]), cg);
        let all = cg.uncolour(&[0, 1, 2, 3]);
        assert!(all.colour_layers().iter().all(|l| l.m() == 0));
        assert_eq!(all.layer(0), cg.host());

        let tri = Graph::complete(3);
        let cg = ColouredGraph::new(tri.clone(), vec![Graph::new(3), tri]).unwrap();
        let out = cg.uncolour(&[0]);
        assert_eq!(out.layer(1).edge_vec(), vec![(1, 2)]);
        assert_eq!(out.layer(0).edge_vec(), vec![(0, 1), (0, 2)]);
        assert!(out.is_s_proper(&[0]));
        assert!(!out.is_s_proper(&[1]));
    }

    #[test]
    fn rejects_non_host_layers() {
        let host = Graph::path(3);
        let bad = Graph::from_edges(3, &[(0, 2)]).unwrap();
        assert!(ColouredGraph::new(host.clone(), vec![Graph::new(3), bad]).is_err());
        let json = r#"{"n":3,"q":1,"layers":[[],[[0,2]]]}"#;
        assert!(ColouredGraph::from_json(json, Some(&host)).is_err());
        assert!(ColouredGraph::from_json(json, None).is_ok());
        assert!(ColouredGraph::from_json(r#"{"n":3,"q":2,"layers":[[]]}"#, None).is_err());
    }

    #[test]
    fn json_layout() {
        let cg = k4_one_colour();
        let text = cg.to_json();
        assert_eq!(
            text,
            r#"{"n":4,"q":2,"layers":[[],[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],[]]}"#
        );
        let back = ColouredGraph::from_json(&text, Some(cg.host())).unwrap();
        assert_eq!(back, cg);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn edge_colour_map() {
        let host = Graph::path(3);
        let cg = ColouredGraph::from_edge_colours(host, 2, &[1, 2]).unwrap();
        assert_eq!(cg.layer(1).edge_vec(), vec![(0, 1)]);
        assert_eq!(cg.layer(2).edge_vec(), vec![(1, 2)]);
        assert!(ColouredGraph::from_edge_colours(Graph::path(3), 2, &[1, 3]).is_err());
    }
}
