//! Brute-force oracles shared by the integration tests. None of them call
//! the library's matching, decomposition or search code.

#![allow(dead_code)]

use std::collections::HashMap;

use matchram::{ColouredGraph, Graph};

/// Maximum matching size by memoised recursion over vertex subsets.
pub fn brute_nu(g: &Graph) -> usize {
    brute_nu_edges(g.n(), &g.edge_vec())
}

pub fn brute_nu_edges(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= 64);
    let mut adj = vec![0u64; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    nu_rec(&adj, all, &mut memo)
}

fn nu_rec(adj: &[u64], mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
    // Vertices without a neighbour inside the mask can be dropped at once.
    let mut mask = mask;
    loop {
        let mut changed = false;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & mask == 0 {
                mask &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if mask == 0 {
        return 0;
    }
    if let Some(&x) = memo.get(&mask) {
        return x;
    }
    let v = mask.trailing_zeros() as usize;
    let without = mask & !(1 << v);
    let mut best = nu_rec(adj, without, memo);
    let mut nb = adj[v] & without;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        best = best.max(1 + nu_rec(adj, without & !(1 << u), memo));
    }
    memo.insert(mask, best);
    best
}

pub fn delete_vertex(g: &Graph, v: usize) -> Vec<(usize, usize)> {
    g.edges().filter(|&(a, b)| a != v && b != v).collect()
}

/// Gallai-Edmonds sets by definition: `D` is missed by some maximum
/// matching, `A = N(D) \ D`, `C` is the rest.
pub struct BruteGe {
    pub d: Vec<usize>,
    pub a: Vec<usize>,
    pub c: Vec<usize>,
    pub nu: usize,
}

pub fn brute_ge(g: &Graph) -> BruteGe {
    let n = g.n();
    let nu = brute_nu(g);
    let in_d: Vec<bool> = (0..n)
        .map(|v| brute_nu_edges(n, &delete_vertex(g, v)) == nu)
        .collect();
    let in_a: Vec<bool> = (0..n)
        .map(|v| !in_d[v] && g.neighbors(v).iter().any(|&u| in_d[u]))
        .collect();
    let pick = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&v| f(v)).collect::<Vec<_>>();
    BruteGe {
        d: pick(&|v| in_d[v]),
        a: pick(&|v| in_a[v]),
        c: pick(&|v| !in_d[v] && !in_a[v]),
        nu,
    }
}

/// Connected components of the subgraph induced by `vertices`, by DFS.
pub fn brute_components(g: &Graph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for &s in vertices {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Edges of `g` with both ends in `vertices`, relabelled to `0..len`.
pub fn induced_edges(g: &Graph, vertices: &[usize]) -> Vec<(usize, usize)> {
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    g.edges()
        .filter_map(|(u, v)| Some((*pos.get(&u)?, *pos.get(&v)?)))
        .collect()
}

/// Every vertex-deleted subgraph of `G[vertices]` has a perfect matching.
pub fn brute_factor_critical(g: &Graph, vertices: &[usize]) -> bool {
    let k = vertices.len();
    if k.is_multiple_of(2) {
        return k == 0;
    }
    let edges = induced_edges(g, vertices);
    (0..k).all(|x| {
        let rest: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != x && b != x)
            .collect();
        2 * brute_nu_edges(k, &rest) == k - 1
    })
}

/// Every two disjoint `s`-sets are joined by an edge.
pub fn brute_is_s_connector(g: &Graph, s: usize) -> bool {
    let n = g.n();
    if 2 * s > n {
        return true;
    }
    let sets = subsets_of_size(n, s);
    for x in &sets {
        for y in &sets {
            if x & y != 0 || x > y {
                continue;
            }
            let joined = (0..n)
                .filter(|&v| x >> v & 1 == 1)
                .any(|v| g.neighbors(v).iter().any(|&u| y >> u & 1 == 1));
            if !joined {
                return false;
            }
        }
    }
    true
}

pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for v in start..n {
            if n - v < k {
                break;
            }
            rec(v + 1, n, k - 1, cur | 1 << v, out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

/// ν of every colour layer, by brute force.
pub fn brute_nu_vector(cg: &ColouredGraph) -> Vec<usize> {
    (1..=cg.q()).map(|j| brute_nu(cg.layer(j))).collect()
}

/// Tries all `q^m` single-colour assignments. Returns whether every one has
/// some colour `j` with `ν(G_j) ≥ t_j`.
pub fn naive_arrows(g: &Graph, t: &[usize]) -> bool {
    let q = t.len();
    let edges = g.edge_vec();
    let m = edges.len();
    let total = q.pow(m as u32);
    let mut colours = vec![0usize; m];
    for code in 0..total {
        let mut c = code;
        for slot in colours.iter_mut() {
            *slot = c % q;
            c /= q;
        }
        let reaches = (0..q).any(|j| {
            let class: Vec<(usize, usize)> = edges
                .iter()
                .zip(&colours)
                .filter(|&(_, &c)| c == j)
                .map(|(&e, _)| e)
                .collect();
            brute_nu_edges(g.n(), &class) >= t[j]
        });
        if !reaches {
            return false;
        }
    }
    true
}

/// A family of vertex sets is a hyperforest iff its vertex-edge incidence
/// graph is a forest.
pub fn brute_is_hyperforest(n: usize, family: &[Vec<usize>]) -> bool {
    let nodes = n + family.len();
    let mut inc = Graph::new(nodes);
    let mut links = 0;
    for (i, e) in family.iter().enumerate() {
        for &v in e {
            inc.add_edge(v, n + i).unwrap();
            links += 1;
        }
    }
    let all: Vec<usize> = (0..nodes).collect();
    links + brute_components(&inc, &all).len() == nodes
}

/// Components of `G_j[D_j]` for every colour, by brute force.
pub fn brute_k_family(cg: &ColouredGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for j in 1..=cg.q() {
        let layer = cg.layer(j);
        out.extend(brute_components(layer, &brute_ge(layer).d));
    }
    out
}

/// `r(T) - |T|` computed from the brute-force decompositions.
pub fn brute_sigma(cg: &ColouredGraph, t: u64) -> i64 {
    let n = cg.n();
    let mut r = 0i64;
    for j in 1..=cg.q() {
        let layer = cg.layer(j);
        let ge = brute_ge(layer);
        r += ge.a.iter().filter(|&&v| t >> v & 1 == 1).count() as i64;
        for k in brute_components(layer, &ge.d) {
            if k.iter().any(|&v| t >> v & 1 == 1) {
                let rest: Vec<usize> = k.iter().copied().filter(|&v| t >> v & 1 == 0).collect();
                let before = brute_nu_edges(k.len(), &induced_edges(layer, &k));
                let after = brute_nu_edges(rest.len(), &induced_edges(layer, &rest));
                r += (before - after) as i64;
            }
        }
    }
    r - (0..n).filter(|&v| t >> v & 1 == 1).count() as i64
}

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}
