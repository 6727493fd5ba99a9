//! Exact arrow decisions `G → t K_2`, the pigeonhole baseline, the ratio
//! `ρ_q`, and the sampling harness for the s-connector bound.

mod adversary;
mod theorem;

pub use adversary::{adversarial_colouring, Adversary};
pub use theorem::{
    theorem_bound, verify_main_plus, verify_main_plus_with, verify_theorem_main, MainPlusOutcome,
    MainPlusReport, TheoremReport,
};

use std::cmp::Reverse;

use num_rational::Ratio;
use serde::Serialize;

use crate::coloured::ColouredGraph;
use crate::connector::{konig_colouring, TVector};
use crate::error::{Error, Result};
use crate::graph::{nu, BlossomSearch, Graph, NONE};

/// Default limit on the number of edges an exact arrow search accepts.
pub const DEFAULT_EDGE_GUARD: usize = 28;

#[derive(Clone, Debug)]
pub struct ArrowVerdict {
    pub arrows: bool,
    /// A colouring with every `ν(G_j) < t_j`, present iff `arrows` is false.
    pub witness: Option<ColouredGraph>,
    pub nodes_explored: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct ArrowOptions {
    pub max_edges: usize,
    /// Abandon a branch when the remaining edges cannot fit into the colours
    /// without some colour reaching its target (Erdős-Gallai edge bound).
    pub capacity_prune: bool,
    /// Try only one of several still-empty colours with equal targets.
    pub symmetry_break: bool,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions {
            max_edges: DEFAULT_EDGE_GUARD,
            capacity_prune: true,
            symmetry_break: true,
        }
    }
}

/// Largest number of edges in an `n`-vertex graph with no matching of size
/// `m + 1`.
pub fn max_edges_with_matching_at_most(n: usize, m: usize) -> usize {
    let pairs = |k: usize| k * k.saturating_sub(1) / 2;
    if n <= 2 * m + 1 {
        pairs(n)
    } else {
        pairs(2 * m + 1).max(pairs(m) + m * (n - m))
    }
}

/// Pigeonhole sufficient condition: `ν(g) > Λ_t`.
pub fn pigeonhole_arrows(g: &Graph, t: &TVector) -> bool {
    nu(g) > t.lambda()
}

pub fn arrows(g: &Graph, t: &TVector) -> Result<ArrowVerdict> {
    arrows_with(g, t, ArrowOptions::default())
}

/// Exact decision by depth-first search over single-colour assignments,
/// keeping a maximum matching per colour up to date incrementally and
/// cutting every branch in which some colour reaches its target.
pub fn arrows_with(g: &Graph, t: &TVector, opts: ArrowOptions) -> Result<ArrowVerdict> {
    if g.m() > opts.max_edges {
        return Err(Error::GuardExceeded {
            what: "arrow search edge count",
            limit: opts.max_edges,
            actual: g.m(),
            flag: "--guard-edges",
        });
    }
    let n = g.n();
    let q = t.q();
    let host_edges = g.edge_vec();
    let mut order: Vec<usize> = (0..host_edges.len()).collect();
    order.sort_by_key(|&i| {
        let (u, v) = host_edges[i];
        (Reverse(g.degree(u) + g.degree(v)), u, v)
    });
    let active = (0..n).filter(|&v| g.degree(v) > 0).count();
    let mut search = Search {
        edges: order.iter().map(|&i| host_edges[i]).collect(),
        targets: t.entries().to_vec(),
        caps: t
            .entries()
            .iter()
            .map(|&tj| max_edges_with_matching_at_most(active, tj - 1))
            .collect(),
        adj: vec![vec![Vec::new(); n]; q],
        mate: vec![vec![NONE; n]; q],
        nu: vec![0; q],
        count: vec![0; q],
        assign: vec![0; host_edges.len()],
        blossom: BlossomSearch::new(n),
        opts,
        nodes: 0,
    };
    let refuted = search.dfs(0);
    let witness = if refuted {
        let mut colours = vec![0; host_edges.len()];
        for (pos, &i) in order.iter().enumerate() {
            colours[i] = search.assign[pos] + 1;
        }
        let cg = ColouredGraph::from_edge_colours(g.clone(), q, &colours)?;
        if !cg.avoids(t.entries()) {
            return Err(Error::contract("arrow search", "witness reaches a target"));
        }
        Some(cg)
    } else {
        None
    };
    Ok(ArrowVerdict {
        arrows: !refuted,
        witness,
        nodes_explored: search.nodes,
    })
}

struct Search {
    edges: Vec<(usize, usize)>,
    targets: Vec<usize>,
    caps: Vec<usize>,
    adj: Vec<Vec<Vec<usize>>>,
    mate: Vec<Vec<usize>>,
    nu: Vec<usize>,
    count: Vec<usize>,
    assign: Vec<usize>,
    blossom: BlossomSearch,
    opts: ArrowOptions,
    nodes: u64,
}

impl Search {
    /// Whether the matching number of colour `j` grew after adding `uv`.
    fn grow(&mut self, j: usize, u: usize, v: usize) -> bool {
        let adj = &self.adj[j];
        let mate = &mut self.mate[j];
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
            return true;
        }
        // An augmenting path must use the new edge; an exposed endpoint of
        // it is then an end of the path.
        if mate[u] == NONE {
            return self.blossom.augment_from(adj, None, mate, u);
        }
        if mate[v] == NONE {
            return self.blossom.augment_from(adj, None, mate, v);
        }
        for root in 0..adj.len() {
            if mate[root] == NONE
                && !adj[root].is_empty()
                && self.blossom.augment_from(adj, None, mate, root)
            {
                return true;
            }
        }
        false
    }

    /// Returns true once every edge is coloured without reaching a target.
    fn dfs(&mut self, i: usize) -> bool {
        self.nodes += 1;
        if i == self.edges.len() {
            return true;
        }
        if self.opts.capacity_prune {
            let spare: usize = self
                .caps
                .iter()
                .zip(&self.count)
                .map(|(c, k)| c.saturating_sub(*k))
                .sum();
            if spare < self.edges.len() - i {
                return false;
            }
        }
        let (u, v) = self.edges[i];
        let mut empty_targets_tried: Vec<usize> = Vec::new();
        for j in 0..self.targets.len() {
            if self.targets[j] == 1 {
                continue;
            }
            if self.opts.symmetry_break && self.count[j] == 0 {
                if empty_targets_tried.contains(&self.targets[j]) {
                    continue;
                }
                empty_targets_tried.push(self.targets[j]);
            }
            let saved = self.mate[j].clone();
            self.adj[j][u].push(v);
            self.adj[j][v].push(u);
            let grew = self.grow(j, u, v) as usize;
            if self.nu[j] + grew < self.targets[j] {
                self.nu[j] += grew;
                self.count[j] += 1;
                self.assign[i] = j;
                if self.dfs(i + 1) {
                    return true;
                }
                self.nu[j] -= grew;
                self.count[j] -= 1;
            }
            self.adj[j][u].pop();
            self.adj[j][v].pop();
            self.mate[j] = saved;
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoResult {
    /// `ρ_q(G)` as an exact fraction.
    pub value: Ratio<usize>,
    pub achieving_t: TVector,
    /// Number of target vectors that needed an exact arrow search.
    pub arrow_queries: usize,
}

pub fn rho(g: &Graph, q: usize) -> Result<RhoResult> {
    rho_with(g, q, ArrowOptions::default())
}

/// `ρ_q(G) = max (Λ_t + 1) / ν(G)` over the targets `t` with `G → t K_2`.
///
/// Arrowing forces `t_j ≤ ν(G)` for every `j`, and the order of the entries
/// is irrelevant, so only non-increasing `t ∈ [1, ν]^q` are examined, by
/// decreasing `Λ_t`. Targets with `Λ_t < ν` arrow by pigeonhole, and
/// `(ν, 1, ..., 1)` always does, so the answer is at least 1. Bipartite
/// graphs are refuted by the cover colouring instead of by search.
pub fn rho_with(g: &Graph, q: usize, opts: ArrowOptions) -> Result<RhoResult> {
    if q == 0 {
        return Err(Error::precondition("rho", "q must be at least 1"));
    }
    let nu_g = nu(g);
    if nu_g == 0 {
        return Err(Error::precondition("rho", "graph has no edges"));
    }
    let mut candidates = Vec::new();
    let mut cur = vec![1; q];
    enumerate_non_increasing(nu_g, 0, &mut cur, &mut candidates);
    candidates.retain(|t: &Vec<usize>| t.iter().map(|x| x - 1).sum::<usize>() >= nu_g);
    candidates.sort_by(|a, b| {
        let la: usize = a.iter().sum();
        let lb: usize = b.iter().sum();
        lb.cmp(&la).then(b.cmp(a))
    });
    let bipartite = g.is_bipartite();
    let mut queries = 0;
    for entries in candidates {
        let t = TVector::new(entries)?;
        let refuted = if bipartite {
            let cg = konig_colouring(g, &t)?;
            if !cg.avoids(t.entries()) {
                return Err(Error::contract(
                    "cover colouring",
                    "a colour reaches its target",
                ));
            }
            true
        } else {
            queries += 1;
            !arrows_with(g, &t, opts)?.arrows
        };
        if !refuted {
            return Ok(RhoResult {
                value: Ratio::new(t.lambda() + 1, nu_g),
                achieving_t: t,
                arrow_queries: queries,
            });
        }
    }
    let mut fallback = vec![1; q];
    fallback[0] = nu_g;
    Ok(RhoResult {
        value: Ratio::from_integer(1),
        achieving_t: TVector::new(fallback)?,
        arrow_queries: queries,
    })
}

fn enumerate_non_increasing(
    max: usize,
    pos: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    let hi = if pos == 0 { max } else { cur[pos - 1] };
    for x in 1..=hi {
        cur[pos] = x;
        enumerate_non_increasing(max, pos + 1, cur, out);
    }
}

/// Some target with `Λ_t ≥ ν(G)` still arrows, i.e. `ρ_q(G) > 1`.
pub fn is_weakly_cl(g: &Graph, q: usize) -> Result<bool> {
    Ok(rho(g, q)?.value > Ratio::from_integer(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connector::cl_extremal;

    fn tv(s: &str) -> TVector {
        s.parse().unwrap()
    }

    #[test]
    fn extremal_edge_counts() {
        assert_eq!(max_edges_with_matching_at_most(5, 2), 10);
        assert_eq!(max_edges_with_matching_at_most(7, 1), 6);
        assert_eq!(max_edges_with_matching_at_most(7, 2), 11);
        assert_eq!(max_edges_with_matching_at_most(4, 0), 0);
    }

    #[test]
    fn small_arrow_examples() {
        assert!(arrows(&Graph::complete(2), &tv("1,1")).unwrap().arrows);
        assert!(arrows(&Graph::complete(5), &tv("2,2")).unwrap().arrows);
        let k4 = arrows(&Graph::complete(4), &tv("2,2")).unwrap();
        assert!(!k4.arrows);
        assert!(k4.witness.unwrap().avoids(&[2, 2]));
        assert!(
            arrows(&Graph::cycle(5).unwrap(), &tv("2,2"))
                .unwrap()
                .arrows
        );
        assert!(!arrows(&Graph::new(3), &tv("1")).unwrap().arrows);
    }

    #[test]
    fn extremal_colouring_matches_oracle() {
        let t = tv("2,2");
        let (g, cg) = cl_extremal(&t);
        assert!(cg.avoids(t.entries()));
        assert!(!arrows(&g, &t).unwrap().arrows);
    }

    #[test]
    fn pruning_options_agree() {
        let plain = ArrowOptions {
            capacity_prune: false,
            symmetry_break: false,
            ..ArrowOptions::default()
        };
        for (g, t) in [
            (Graph::complete(5), tv("2,2")),
            (Graph::complete(4), tv("2,2")),
            (Graph::petersen(), tv("3,2")),
            (Graph::cycle(7).unwrap(), tv("2,3")),
        ] {
            assert_eq!(
                arrows(&g, &t).unwrap().arrows,
                arrows_with(&g, &t, plain).unwrap().arrows
            );
        }
    }

    #[test]
    fn guard_names_flag() {
        let err = arrows(&Graph::complete(9), &tv("2,2")).unwrap_err();
        assert!(matches!(
            err,
            Error::GuardExceeded {
                flag: "--guard-edges",
                ..
            }
        ));
    }

    #[test]
    fn pigeonhole_examples() {
        assert!(!pigeonhole_arrows(&Graph::complete(5), &tv("2,2")));
        assert!(pigeonhole_arrows(&Graph::complete(7), &tv("3")));
        assert!(!pigeonhole_arrows(&Graph::new(4), &tv("1,1")));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(
            rho(&Graph::complete(3), 2).unwrap().value,
            Ratio::from_integer(1)
        );
        assert_eq!(
            rho(&Graph::path(4), 2).unwrap().value,
            Ratio::from_integer(1)
        );
        let c5 = rho(&Graph::cycle(5).unwrap(), 2).unwrap();
        assert_eq!(c5.value, Ratio::new(3, 2));
        assert_eq!(c5.achieving_t, tv("2,2"));
        assert!(rho(&Graph::new(3), 2).is_err());
        assert!(is_weakly_cl(&Graph::cycle(7).unwrap(), 2).unwrap());
        assert!(!is_weakly_cl(&Graph::complete_bipartite(3, 3), 3).unwrap());
    }
}
