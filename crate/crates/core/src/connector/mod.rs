//! s-connector verification, graph generators, and explicit colourings that
//! avoid prescribed monochromatic matchings.

mod constructions;
mod generators;

pub use constructions::{
    cl_extremal, gnp_adversary_colouring, konig_colouring, sharp_construction, split_star_colouring,
};
pub use generators::{
    gen_complete_split, gen_gnp, gen_odd_cycle, gen_random_regular, gen_s_connector,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Target vector `t = (t_1, ..., t_q)` of positive matching sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TVector(Vec<usize>);

impl TVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput(
                "t-vector needs at least one colour".into(),
            ));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "t-vector entries must be positive: {entries:?}"
            )));
        }
        Ok(TVector(entries))
    }

    /// `(k, k, ..., k)` with `q` entries.
    pub fn uniform(q: usize, k: usize) -> Result<Self> {
        TVector::new(vec![k; q])
    }

    pub fn q(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    /// `Λ_t = Σ (t_j - 1)`.
    pub fn lambda(&self) -> usize {
        self.0.iter().map(|&x| x - 1).sum()
    }

    /// `‖t‖_∞`.
    pub fn tmax(&self) -> usize {
        *self.0.iter().max().unwrap()
    }

    /// Entries sorted into non-increasing order.
    pub fn sorted_desc(&self) -> TVector {
        let mut e = self.0.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        TVector(e)
    }

    /// Coordinatewise `t ≤ other`.
    pub fn le(&self, other: &TVector) -> bool {
        self.q() == other.q() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for TVector {
    type Err = Error;

    /// Comma-separated list, e.g. `2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("t-vector {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TVector::new(entries)
    }
}

/// Outcome of an s-connector check. A negative verdict carries two disjoint
/// `s`-sets with no edge between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectorCertificate {
    pub s: usize,
    pub verdict: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Limits on exhaustive connector checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectorGuard {
    pub max_n: usize,
    pub max_s: usize,
}

impl Default for ConnectorGuard {
    fn default() -> Self {
        ConnectorGuard {
            max_n: 24,
            max_s: 5,
        }
    }
}

/// Searches for `s` vertices whose common non-neighbourhood has at least `s`
/// vertices, i.e. a `K_{s,s}` in the complement. Such an `X` and the first
/// `s` of its common non-neighbours form a witness. Prefixes are abandoned
/// once their common non-neighbourhood is already too small.
fn find_bipartite_hole(nonadj: &[u64], s: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    fn extend(
        nonadj: &[u64],
        s: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        common: u64,
    ) -> Option<Vec<usize>> {
        if chosen.len() == s {
            return Some(chosen.clone());
        }
        let needed = s - chosen.len();
        for v in start..=nonadj.len().saturating_sub(needed) {
            let next = common & nonadj[v];
            if (next.count_ones() as usize) < s {
                continue;
            }
            chosen.push(v);
            if let Some(x) = extend(nonadj, s, v + 1, chosen, next) {
                return Some(x);
            }
            chosen.pop();
        }
        None
    }

    let n = nonadj.len();
    if s == 0 || 2 * s > n {
        return None;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let x = extend(nonadj, s, 0, &mut Vec::with_capacity(s), all)?;
    let mut common = all;
    for &v in &x {
        common &= nonadj[v];
    }
    let mut y = Vec::with_capacity(s);
    while y.len() < s {
        let w = common.trailing_zeros() as usize;
        common &= common - 1;
        y.push(w);
    }
    Some((x, y))
}

fn non_adjacency(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    g.adjacency_masks()
        .iter()
        .enumerate()
        .map(|(v, &row)| all & !row & !(1u64 << v))
        .collect()
}

/// Exact s-connector test: every two disjoint vertex sets of size `s` are
/// joined by an edge (equivalently the complement has no `K_{s,s}`).
pub fn is_s_connector(g: &Graph, s: usize) -> Result<ConnectorCertificate> {
    is_s_connector_with(g, s, ConnectorGuard::default())
}

pub fn is_s_connector_with(
    g: &Graph,
    s: usize,
    guard: ConnectorGuard,
) -> Result<ConnectorCertificate> {
    if s == 0 {
        return Err(Error::precondition(
            "is_s_connector",
            "s must be at least 1",
        ));
    }
    if 2 * s > g.n() {
        return Ok(ConnectorCertificate {
            s,
            verdict: true,
            witness: None,
        });
    }
    let max_n = guard.max_n.min(64);
    if g.n() > max_n {
        return Err(Error::GuardExceeded {
            what: "connector check vertex count",
            limit: max_n,
            actual: g.n(),
            flag: "--guard-n",
        });
    }
    if s > guard.max_s {
        return Err(Error::GuardExceeded {
            what: "connector check parameter s",
            limit: guard.max_s,
            actual: s,
            flag: "--guard-n",
        });
    }
    let witness = find_bipartite_hole(&non_adjacency(g), s);
    Ok(ConnectorCertificate {
        s,
        verdict: witness.is_none(),
        witness,
    })
}

/// Bipartite independence number: the largest `t` with a `K_{t,t}` in the
/// complement. Refuses graphs above `max_n` vertices.
pub fn alpha_star(g: &Graph, max_n: usize) -> Result<usize> {
    let limit = max_n.min(64);
    if g.n() > limit {
        return Err(Error::GuardExceeded {
            what: "alpha_star vertex count",
            limit,
            actual: g.n(),
            flag: "--guard-n",
        });
    }
    let nonadj = non_adjacency(g);
    let mut t = 0;
    while find_bipartite_hole(&nonadj, t + 1).is_some() {
        t += 1;
    }
    Ok(t)
}

/// Default vertex limit for [`alpha_star`].
pub const ALPHA_STAR_MAX_N: usize = 18;
