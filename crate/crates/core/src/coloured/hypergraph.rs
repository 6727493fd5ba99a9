use serde::Serialize;

use super::ColouredGraph;
use crate::graph::ge_decompose;

/// Which family a hyperedge was drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    /// A connected component of some colour layer.
    Component,
    /// A component of `G_j[D_j]` for some colour `j`.
    DComponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperEdge {
    pub vertices: Vec<usize>,
    pub colour: usize,
    pub origin: Origin,
}

/// A multihypergraph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentHypergraph {
    pub n: usize,
    pub edges: Vec<HyperEdge>,
}

impl ComponentHypergraph {
    /// A largest hyperedge; ties go to the smallest colour, then the
    /// smallest minimum vertex.
    pub fn max_edge(&self) -> Option<&HyperEdge> {
        self.edges.iter().min_by(|a, b| {
            b.vertices
                .len()
                .cmp(&a.vertices.len())
                .then(a.colour.cmp(&b.colour))
                .then(a.vertices.first().cmp(&b.vertices.first()))
        })
    }
}

/// Components of each colour layer that contain at least one edge. Isolated
/// vertices of a layer contribute no hyperedge.
pub fn component_hypergraph(cg: &ColouredGraph) -> ComponentHypergraph {
    let mut edges = Vec::new();
    for (j, layer) in cg.layers().iter().enumerate().skip(1) {
        for comp in layer.components() {
            if comp.len() >= 2 {
                edges.push(HyperEdge {
                    vertices: comp,
                    colour: j,
                    origin: Origin::Component,
                });
            }
        }
    }
    ComponentHypergraph { n: cg.n(), edges }
}

/// Components of `G_j[D_j]` for every colour `j`, singletons included.
pub fn k_hypergraph(cg: &ColouredGraph) -> ComponentHypergraph {
    let mut edges = Vec::new();
    for (j, layer) in cg.layers().iter().enumerate().skip(1) {
        for comp in ge_decompose(layer).d_components {
            edges.push(HyperEdge {
                vertices: comp,
                colour: j,
                origin: Origin::DComponent,
            });
        }
    }
    ComponentHypergraph { n: cg.n(), edges }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Berge-acyclicity: the vertex/hyperedge incidence graph is a forest.
/// Each membership pair is one incidence edge; an edge that joins two nodes
/// already connected closes a cycle.
pub fn is_hyperforest(h: &ComponentHypergraph) -> bool {
    let mut uf = UnionFind::new(h.n + h.edges.len());
    for (i, e) in h.edges.iter().enumerate() {
        for &v in &e.vertices {
            if !uf.union(v, h.n + i) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn hyper(n: usize, sets: &[&[usize]]) -> ComponentHypergraph {
        ComponentHypergraph {
            n,
            edges: sets
                .iter()
                .map(|s| HyperEdge {
                    vertices: s.to_vec(),
                    colour: 1,
                    origin: Origin::Component,
                })
                .collect(),
        }
    }

    #[test]
    fn hyperforest_examples() {
        assert!(is_hyperforest(&hyper(3, &[&[0, 1, 2]])));
        assert!(!is_hyperforest(&hyper(3, &[&[0, 1], &[1, 2], &[0, 2]])));
        assert!(is_hyperforest(&hyper(4, &[&[0, 1, 2], &[2, 3]])));
        assert!(!is_hyperforest(&hyper(2, &[&[0, 1], &[0, 1]])));
        assert!(is_hyperforest(&hyper(1, &[&[0], &[0]])));
    }

    #[test]
    fn components_of_layers() {
        let l1 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cg = ColouredGraph::from_layers(4, vec![Graph::new(4), l1]).unwrap();
        let h = component_hypergraph(&cg);
        assert_eq!(h.edges.len(), 2);
        assert!(h.edges.iter().all(|e| e.vertices.len() == 2));

        let l1 = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let l2 = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let cg = ColouredGraph::from_layers(3, vec![Graph::new(3), l1, l2]).unwrap();
        let h = component_hypergraph(&cg);
        assert_eq!(h.edges[0].vertices, vec![0, 1]);
        assert_eq!(h.edges[1].vertices, vec![1, 2]);
        assert!(is_hyperforest(&h));
    }

    #[test]
    fn k_family_keeps_singletons() {
        // P3 in one colour: D = {0, 2}, two singleton components.
        let cg = ColouredGraph::from_layers(3, vec![Graph::new(3), Graph::path(3)]).unwrap();
        let k = k_hypergraph(&cg);
        assert_eq!(k.edges.len(), 2);
        assert!(k.edges.iter().all(|e| e.vertices.len() == 1));
        assert_eq!(component_hypergraph(&cg).edges.len(), 1);
    }

    #[test]
    fn max_edge_tie_break() {
        let h = ComponentHypergraph {
            n: 6,
            edges: vec![
                HyperEdge {
                    vertices: vec![3, 4, 5],
                    colour: 2,
                    origin: Origin::Component,
                },
                HyperEdge {
                    vertices: vec![1, 2, 3],
                    colour: 1,
                    origin: Origin::Component,
                },
                HyperEdge {
                    vertices: vec![0, 1, 2],
                    colour: 1,
                    origin: Origin::Component,
                },
            ],
        };
        assert_eq!(h.max_edge().unwrap().vertices, vec![0, 1, 2]);
    }
}
