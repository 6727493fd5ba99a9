use super::TVector;
use crate::coloured::ColouredGraph;
use crate::error::{Error, Result};
use crate::graph::{konig_cover, nu, Graph};

/// The standard extremal colouring of `K_n`, `n = ‖t‖∞ + Λ_t`.
///
/// Colours are ordered by non-increasing `t_j` (stable on the index). The
/// first block has `2t - 1` vertices and carries its colour internally; each
/// later block of `t_j - 1` vertices takes colour `j` on every edge it meets
/// that an earlier block has not taken. Colour `j` is thus covered by its
/// block, so no colour-`j` matching exceeds `t_j - 1`.
pub fn cl_extremal(t: &TVector) -> (Graph, ColouredGraph) {
    let q = t.q();
    let mut order: Vec<usize> = (1..=q).collect();
    order.sort_by_key(|&j| std::cmp::Reverse(t.get(j)));
    let n = t.tmax() + t.lambda();

    let mut block = Vec::with_capacity(n);
    for (pos, &j) in order.iter().enumerate() {
        let size = if pos == 0 {
            2 * t.get(j) - 1
        } else {
            t.get(j) - 1
        };
        block.extend(std::iter::repeat_n(pos, size));
    }

    let host = Graph::complete(n);
    let mut layers = vec![Graph::new(n); q + 1];
    for (u, v) in host.edges() {
        let (a, b) = (block[u].min(block[v]), block[u].max(block[v]));
        let pos = if a == 0 { b } else { a };
        layers[order[pos]].add_edge(u, v).expect("host edge");
    }
    let cg = ColouredGraph::new(host.clone(), layers).expect("layers are host subgraphs");
    (host, cg)
}

/// [`cl_extremal`] padded with `s - 1` isolated vertices: an `s`-connector on
/// `‖t‖∞ + Λ_t + s - 1` vertices with no colour-`j` matching of size `t_j`.
pub fn sharp_construction(t: &TVector, s: usize) -> Result<(Graph, ColouredGraph)> {
    if s == 0 {
        return Err(Error::precondition(
            "sharp_construction",
            "s must be at least 1",
        ));
    }
    let (host, cg) = cl_extremal(t);
    let host = host.with_isolated(s - 1);
    let layers = cg.layers().iter().map(|l| l.with_isolated(s - 1)).collect();
    let cg = ColouredGraph::new(host.clone(), layers)?;
    Ok((host, cg))
}

/// Complete split graph with clique `0..q` and an independent set of
/// `2s - 1` vertices; each edge takes the least `j` whose clique vertex
/// `j - 1` it contains, so every colour class is a star.
pub fn split_star_colouring(q: usize, s: usize) -> Result<(Graph, ColouredGraph)> {
    if q == 0 || s < 2 {
        return Err(Error::precondition(
            "split_star_colouring",
            format!("need q >= 1 and s >= 2, got q = {q}, s = {s}"),
        ));
    }
    let host = super::gen_complete_split(q, 2 * s - 1);
    let mut layers = vec![Graph::new(host.n()); q + 1];
    for (u, v) in host.edges() {
        // u < v, so u is the clique endpoint of least index.
        layers[u + 1].add_edge(u, v).expect("host edge");
    }
    let cg = ColouredGraph::new(host.clone(), layers)?;
    Ok((host, cg))
}

/// Colours a bipartite graph through a minimum vertex cover `X`, split
/// greedily into parts `X_j` of size at most `t_j - 1`; each edge takes the
/// least `j` with an endpoint in `X_j`.
pub fn konig_colouring(g: &Graph, t: &TVector) -> Result<ColouredGraph> {
    let cover = konig_cover(g)?;
    if cover.len() > t.lambda() {
        return Err(Error::precondition(
            "konig_colouring",
            format!("Λ_t = {} is below ν = {}", t.lambda(), cover.len()),
        ));
    }
    let mut part = vec![usize::MAX; g.n()];
    let mut j = 1;
    let mut used = 0;
    for &x in &cover {
        while used == t.get(j) - 1 {
            j += 1;
            used = 0;
        }
        part[x] = j;
        used += 1;
    }
    let mut layers = vec![Graph::new(g.n()); t.q() + 1];
    for (u, v) in g.edges() {
        let j = part[u].min(part[v]);
        layers[j].add_edge(u, v)?;
    }
    ColouredGraph::new(g.clone(), layers)
}

/// Colours the largest component together with every other component that
/// contains a cycle in a colour `j` of maximum `t_j`, then handles the
/// remaining forest with [`konig_colouring`] and the target reduced by the
/// matching number already spent. Returns `None` when that matching number
/// reaches `‖t‖∞`.
pub fn gnp_adversary_colouring(g: &Graph, t: &TVector) -> Result<Option<ColouredGraph>> {
    let total = nu(g);
    if total > t.lambda() {
        return Err(Error::precondition(
            "gnp_adversary_colouring",
            format!("Λ_t = {} is below ν = {total}", t.lambda()),
        ));
    }
    let comps = g.components();
    let edge_count = |c: &[usize]| c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    let Some(largest) = comps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
    else {
        return Ok(Some(konig_colouring(g, t)?));
    };
    let mut dense = vec![false; g.n()];
    let mut any_cycle = false;
    for (i, c) in comps.iter().enumerate() {
        let cyclic = edge_count(c) >= c.len();
        any_cycle |= cyclic;
        if i == largest || cyclic {
            for &v in c {
                dense[v] = true;
            }
        }
    }
    if !any_cycle {
        return Ok(Some(konig_colouring(g, t)?));
    }

    let core_vertices = crate::graph::mask_to_vec(&dense);
    let (core, _) = g.induced(&core_vertices)?;
    let spent = nu(&core);
    if spent >= t.tmax() {
        return Ok(None);
    }
    let eta = (1..=t.q())
        .find(|&j| t.get(j) == t.tmax())
        .expect("non-empty t");
    let mut reduced = t.entries().to_vec();
    reduced[eta - 1] -= spent;
    let reduced = TVector::new(reduced)?;

    let mut forest = g.clone();
    for (u, v) in g.edges() {
        if dense[u] {
            forest.remove_edge(u, v);
        }
    }
    let rest = konig_colouring(&forest, &reduced)?;
    let mut layers = rest.layers().to_vec();
    for (u, v) in g.edges().filter(|&(u, _)| dense[u]) {
        layers[eta].add_edge(u, v)?;
    }
    Ok(Some(ColouredGraph::new(g.clone(), layers)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connector::is_s_connector;

    fn below_targets(cg: &ColouredGraph, t: &TVector) -> bool {
        cg.avoids(t.entries())
    }

    fn tv(s: &str) -> TVector {
        s.parse().unwrap()
    }

    #[test]
    fn cl_extremal_examples() {
        let (g, cg) = cl_extremal(&tv("2,2"));
        assert_eq!(g, Graph::complete(4));
        assert_eq!(cg.layer(1).edge_vec(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(cg.layer(2).edge_vec(), vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(cg.nu_vector(), vec![1, 1]);

        let (g, cg) = cl_extremal(&tv("1,1"));
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(cg.nu_vector(), vec![0, 0]);

        let (g, cg) = cl_extremal(&tv("3"));
        assert_eq!(g, Graph::complete(5));
        assert_eq!(cg.nu_vector(), vec![2]);
    }

    #[test]
    fn cl_extremal_orders_by_target() {
        let t = tv("2,4,3");
        let (g, cg) = cl_extremal(&t);
        assert_eq!(g.n(), 4 + 6);
        assert!(cg.is_fully_coloured());
        assert!(below_targets(&cg, &t));
        // The largest target owns the big clique.
        assert_eq!(cg.layer(2).m(), 21);
    }

    #[test]
    fn sharp_examples() {
        let (g, cg) = sharp_construction(&tv("2,2"), 2).unwrap();
        assert_eq!(g, Graph::complete(4).with_isolated(1));
        assert!(is_s_connector(&g, 2).unwrap().verdict);
        assert_eq!(cg.nu_vector(), vec![1, 1]);

        let (g, cg) = sharp_construction(&tv("2"), 3).unwrap();
        assert_eq!(g, Graph::complete(3).with_isolated(2));
        assert_eq!(cg.nu_vector(), vec![1]);
        assert!(sharp_construction(&tv("2"), 0).is_err());
    }

    #[test]
    fn split_star_examples() {
        let (g, cg) = split_star_colouring(2, 2).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(cg.layer(1).m(), 4);
        assert_eq!(cg.layer(2).m(), 3);
        assert_eq!(cg.nu_vector(), vec![1, 1]);

        let (g, cg) = split_star_colouring(1, 2).unwrap();
        assert_eq!(g, Graph::complete_bipartite(1, 3));
        assert_eq!(cg.nu_vector(), vec![1]);

        let (g, _) = split_star_colouring(2, 3).unwrap();
        assert_eq!(g.n(), 7);
        assert!(is_s_connector(&g, 3).unwrap().verdict);
        assert!(split_star_colouring(2, 1).is_err());
    }

    #[test]
    fn konig_examples() {
        let cg = konig_colouring(&Graph::path(4), &tv("2,2")).unwrap();
        assert_eq!(cg.nu_vector(), vec![1, 1]);
        assert!(cg.is_fully_coloured());

        let k33 = Graph::complete_bipartite(3, 3);
        let cg = konig_colouring(&k33, &tv("4")).unwrap();
        assert_eq!(cg.layer(1), &k33);

        let c6 = Graph::cycle(6).unwrap();
        let t = tv("2,3");
        assert!(below_targets(&konig_colouring(&c6, &t).unwrap(), &t));

        assert!(konig_colouring(&Graph::complete(3), &tv("3,3")).is_err());
        assert!(konig_colouring(&c6, &tv("2,2")).is_err());
    }

    #[test]
    fn gnp_adversary_examples() {
        let tri = Graph::complete(3).with_isolated(3);
        let t = tv("2,2");
        let cg = gnp_adversary_colouring(&tri, &t).unwrap().unwrap();
        assert_eq!(cg.layer(1).m(), 3);
        assert_eq!(cg.nu_vector(), vec![1, 0]);

        let g = Graph::cycle(4).unwrap().disjoint_union(&Graph::path(2));
        let t = tv("3,3");
        let cg = gnp_adversary_colouring(&g, &t).unwrap().unwrap();
        assert!(below_targets(&cg, &t));
        assert!(cg.is_fully_coloured());

        let forest = Graph::path(5);
        let t = tv("2,2");
        assert_eq!(
            gnp_adversary_colouring(&forest, &t).unwrap().unwrap(),
            konig_colouring(&forest, &t).unwrap()
        );

        // K5 has ν = 2 = ‖t‖∞.
        assert!(gnp_adversary_colouring(&Graph::complete(5), &tv("2,2"))
            .unwrap()
            .is_none());
        assert!(gnp_adversary_colouring(&Graph::complete(5), &tv("2")).is_err());
    }
}
