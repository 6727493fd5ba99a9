//! Simple undirected graphs on dense vertex labels `0..n`, together with
//! maximum matchings, Gallai-Edmonds decompositions and the weighted-forest
//! helpers used by the structural bounds.

mod forest;
mod gallai_edmonds;
mod io;
mod matching;

pub use forest::{balanced_subset, weighted_centroid, WeightedForest};
pub use gallai_edmonds::{ge_decompose, is_factor_critical, GeClass, GeDecomposition};
pub use matching::{
    bipartite_matching, konig_cover, max_matching, max_matching_within, nu, nu_between, nu_within,
    Matching,
};
pub(crate) use matching::{BlossomSearch, NONE};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An undirected simple graph. Adjacency lists are kept sorted, so iteration
/// order is deterministic everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are rejected, as are loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidInput(format!("duplicate edge {{{u},{v}}}")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut g = Graph::new(n);
        for u in 0..n {
            g.insert_unchecked(u, (u + 1) % n);
        }
        Ok(g)
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.insert_unchecked(u - 1, u);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.insert_unchecked(i, (i + 1) % 5);
            g.insert_unchecked(i, i + 5);
            g.insert_unchecked(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Adds `{u,v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.insert_unchecked(u, v))
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                true
            }
        }
    }

    /// Removes `{u,v}`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        self.m -= 1;
        true
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// True if every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.insert_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Union of edge sets; both graphs must have the same vertex count.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n() != other.n() {
            return Err(Error::InvalidInput(format!(
                "vertex counts differ: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.insert_unchecked(u, v);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend((0..other.n()).map(|_| Vec::new()));
        for (u, v) in other.edges() {
            g.insert_unchecked(u + off, v + off);
        }
        g
    }

    /// Same graph with `k` extra isolated vertices appended.
    pub fn with_isolated(&self, k: usize) -> Graph {
        self.disjoint_union(&Graph::new(k))
    }

    /// Induced subgraph on `vertices`. The returned table maps each new
    /// vertex index to its label in `self`; new labels follow the sorted
    /// order of `vertices`.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.insert_unchecked(i, j);
                }
            }
        }
        Ok((g, keep))
    }

    /// `self - v`, with the relabelling table as for [`Graph::induced`].
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(v)?;
        let rest: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        self.induced(&rest)
    }

    /// Graph on the same vertex set with only the edges inside `vertices`.
    pub fn restrict_edges_to(&self, vertices: &[usize]) -> Graph {
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            if inside[u] && inside[v] {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n()])
    }

    /// Components of the subgraph induced by the vertices with `active[v]`.
    pub fn components_within(&self, active: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || !active[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if active[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Side assignment (`false`/`true`) of a proper 2-colouring, found by BFS
    /// from the smallest vertex of each component, or `None` if some
    /// component contains an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A graph is a forest iff every component has one edge fewer than
    /// vertices.
    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    /// Adjacency rows as 64-bit masks. Only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |acc, &w| acc | (1u64 << w)))
            .collect()
    }
}

/// Sorted list of the vertices `v` with `mask[v]`.
pub(crate) fn mask_to_vec(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &b)| b.then_some(v))
        .collect()
}

pub(crate) fn vec_to_mask(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}
