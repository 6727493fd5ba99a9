//! Maximum matchings in general graphs (Edmonds' blossom search) and in
//! bipartite graphs (augmenting paths plus the König cover).

use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

pub(crate) const NONE: usize = usize::MAX;

/// A matching stored as a mate table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub(crate) fn from_raw(mate: &[usize]) -> Self {
        Matching {
            mate: mate.iter().map(|&m| (m != NONE).then_some(m)).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching from explicit edges; fails if two edges share a vertex.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut mate = vec![None; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v || mate[u].is_some() || mate[v].is_some() {
                return Err(Error::InvalidInput(format!(
                    "edge {{{u},{v}}} overlaps the matching"
                )));
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        Ok(Matching { mate })
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| v > u).map(|v| (u, v)))
            .collect()
    }

    /// Sorted list of covered vertices.
    pub fn covered(&self) -> Vec<usize> {
        (0..self.mate.len()).filter(|&v| self.covers(v)).collect()
    }

    /// True if every matched pair is an edge of `g`.
    pub fn is_matching_of(&self, g: &Graph) -> bool {
        self.mate.len() == g.n() && self.edges().iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// Keeps only the first `k` edges (in sorted order).
    pub fn truncated(&self, k: usize) -> Matching {
        let edges: Vec<_> = self.edges().into_iter().take(k).collect();
        Matching::from_edges(self.mate.len(), &edges).expect("subset of a matching")
    }
}

/// Reusable buffers for Edmonds' augmenting-path search with blossom
/// shrinking. Vertices outside `active` (when given) are treated as deleted.
pub(crate) struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    pub(crate) fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.on_path.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root` and
    /// flips it if found.
    pub(crate) fn augment_from(
        &mut self,
        adj: &[Vec<usize>],
        active: Option<&[bool]>,
        mate: &mut [usize],
        root: usize,
    ) -> bool {
        let n = adj.len();
        let is_active = |v: usize| active.is_none_or(|a| a[v]);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.in_tree.iter_mut().for_each(|x| *x = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if !is_active(to) || self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        let mut w = to;
                        while w != NONE {
                            let pv = self.parent[w];
                            let next = mate[pv];
                            mate[w] = pv;
                            mate[pv] = w;
                            w = next;
                        }
                        return true;
                    }
                    self.in_tree[mate[to]] = true;
                    self.queue.push_back(mate[to]);
                }
            }
        }
        false
    }

    /// Extends `mate` to a maximum matching. A single pass over exposed
    /// roots suffices: a root with no augmenting path never gains one later.
    pub(crate) fn maximise(
        &mut self,
        adj: &[Vec<usize>],
        active: Option<&[bool]>,
        mate: &mut [usize],
    ) {
        for root in 0..adj.len() {
            if mate[root] == NONE && active.is_none_or(|a| a[root]) {
                self.augment_from(adj, active, mate, root);
            }
        }
    }
}

fn matching_raw(g: &Graph, active: Option<&[bool]>) -> Vec<usize> {
    let n = g.n();
    let is_active = |v: usize| active.is_none_or(|a| a[v]);
    let mut mate = vec![NONE; n];
    // Greedy warm start in vertex order.
    for u in 0..n {
        if mate[u] != NONE || !is_active(u) {
            continue;
        }
        if let Some(&v) = g
            .neighbors(u)
            .iter()
            .find(|&&v| mate[v] == NONE && is_active(v))
        {
            mate[u] = v;
            mate[v] = u;
        }
    }
    BlossomSearch::new(n).maximise(&g.adj, active, &mut mate);
    mate
}

/// A maximum matching of `g`. Deterministic: greedy warm start followed by
/// augmentation from exposed vertices in increasing order.
pub fn max_matching(g: &Graph) -> Matching {
    Matching::from_raw(&matching_raw(g, None))
}

/// Maximum matching of the subgraph induced by `active`, in the labels of `g`.
pub fn max_matching_within(g: &Graph, active: &[bool]) -> Matching {
    Matching::from_raw(&matching_raw(g, Some(active)))
}

/// Matching number `ν(g)`.
pub fn nu(g: &Graph) -> usize {
    max_matching(g).size()
}

/// `ν(g[active])`.
pub fn nu_within(g: &Graph, active: &[bool]) -> usize {
    max_matching_within(g, active).size()
}

/// Largest matching whose every edge has one endpoint in `x` and the other
/// in `y`. The sets may overlap.
pub fn nu_between(g: &Graph, x: &[usize], y: &[usize]) -> usize {
    let in_x = super::vec_to_mask(g.n(), x);
    let in_y = super::vec_to_mask(g.n(), y);
    let mut eligible = Graph::new(g.n());
    for (u, v) in g.edges() {
        if (in_x[u] && in_y[v]) || (in_y[u] && in_x[v]) {
            eligible.insert_unchecked(u, v);
        }
    }
    if (0..g.n()).any(|v| in_x[v] && in_y[v]) {
        nu(&eligible)
    } else {
        // Every eligible edge crosses from X to Y.
        bipartite_matching(&eligible, &in_y).size()
    }
}

/// Maximum matching of a bipartite graph whose sides are given by `side`
/// (`false` = left). Edges inside a side are ignored.
pub fn bipartite_matching(g: &Graph, side: &[bool]) -> Matching {
    fn try_kuhn(g: &Graph, side: &[bool], u: usize, seen: &mut [bool], mate: &mut [usize]) -> bool {
        for &v in g.neighbors(u) {
            if side[v] == side[u] || seen[v] {
                continue;
            }
            seen[v] = true;
            if mate[v] == NONE || try_kuhn(g, side, mate[v], seen, mate) {
                mate[v] = u;
                mate[u] = v;
                return true;
            }
        }
        false
    }

    let n = g.n();
    let mut mate = vec![NONE; n];
    let mut seen = vec![false; n];
    for u in (0..n).filter(|&u| !side[u]) {
        seen.iter_mut().for_each(|s| *s = false);
        try_kuhn(g, side, u, &mut seen, &mut mate);
    }
    Matching::from_raw(&mate)
}

/// Minimum vertex cover of a bipartite graph, of size `ν(g)` by König's
/// theorem. Built from a maximum matching by alternating reachability from
/// the exposed left vertices. Errors if `g` is not bipartite.
pub fn konig_cover(g: &Graph) -> Result<Vec<usize>> {
    let side = g
        .bipartition()
        .ok_or_else(|| Error::precondition("konig_cover", "graph is not bipartite"))?;
    let m = bipartite_matching(g, &side);
    let n = g.n();
    let mut reach = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| !side[u] && !m.covers(u)).collect();
    for &u in &stack {
        reach[u] = true;
    }
    while let Some(u) = stack.pop() {
        // `u` is a left vertex; step along non-matching edges to the right,
        // then back along the matching edge.
        for &v in g.neighbors(u) {
            if reach[v] || m.mate(u) == Some(v) {
                continue;
            }
            reach[v] = true;
            if let Some(w) = m.mate(v) {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let cover: Vec<usize> = (0..n)
        .filter(|&v| {
            if side[v] {
                reach[v]
            } else {
                !reach[v] && g.degree(v) > 0
            }
        })
        .collect();
    debug_assert_eq!(cover.len(), m.size());
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_named_graphs() {
        assert_eq!(nu(&Graph::new(4)), 0);
        assert_eq!(nu(&Graph::complete(4)), 2);
        assert_eq!(nu(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(nu(&Graph::petersen()), 5);
        assert_eq!(nu(&Graph::complete(7)), 3);
        assert_eq!(nu(&Graph::new(0)), 0);
    }

    #[test]
    fn matching_edges_belong_to_graph() {
        let g = Graph::petersen();
        let m = max_matching(&g);
        assert!(m.is_matching_of(&g));
        assert_eq!(m.covered().len(), 10);
    }

    #[test]
    fn blossom_needed() {
        // Triangle 0-1-2 with pendant paths: greedy matches 0-1 first, and
        // the augmenting path 3-0-... must pass through the blossom.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(nu(&g), 3);
    }

    #[test]
    fn masked_matching_ignores_inactive() {
        let g = Graph::complete(4);
        assert_eq!(nu_within(&g, &[true, true, true, false]), 1);
        assert_eq!(nu_within(&g, &[false; 4]), 0);
    }

    #[test]
    fn nu_between_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(nu_between(&k4, &[0, 1], &[2, 3]), 2);
        // No C5 edge joins {0,1} to {3}.
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(nu_between(&c5, &[0, 1], &[3]), 0);
        assert_eq!(nu_between(&c5, &[], &[0, 1, 2]), 0);
        // Overlapping sets fall back to the general matcher.
        assert_eq!(nu_between(&k4, &[0, 1, 2], &[1, 2, 3]), 2);
    }

    #[test]
    fn konig_cover_sizes() {
        let p4 = Graph::path(4);
        let cover = konig_cover(&p4).unwrap();
        assert_eq!(cover.len(), 2);
        for (u, v) in p4.edges() {
            assert!(cover.contains(&u) || cover.contains(&v));
        }
        assert_eq!(
            konig_cover(&Graph::complete_bipartite(3, 3)).unwrap().len(),
            3
        );
        assert!(konig_cover(&Graph::cycle(5).unwrap()).is_err());
    }

    #[test]
    fn truncation_keeps_prefix() {
        let m = max_matching(&Graph::complete(6));
        assert_eq!(m.truncated(2).size(), 2);
        assert_eq!(m.truncated(9).size(), 3);
    }
}
