use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::find_bipartite_hole;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Attempts of the pairing model before giving up.
const PAIRING_ATTEMPTS: usize = 10_000;

/// Binomial random graph `G(n, p)`; pairs are visited in lexicographic order.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "edge probability {p} outside [0,1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Uniform-ish random `d`-regular graph from the pairing model, retrying
/// whenever a pairing produces a loop or a repeated edge.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidInput(format!("n*d = {} is odd", n * d)));
    }
    if d >= n.max(1) && d > 0 {
        return Err(Error::InvalidInput(format!(
            "degree {d} impossible on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !g.add_edge(u, v)? {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(Error::InvalidInput(format!(
        "no simple {d}-regular pairing on {n} vertices after {PAIRING_ATTEMPTS} attempts"
    )))
}

/// Clique `0..clique` joined completely to the independent set
/// `clique..clique+independent`.
pub fn gen_complete_split(clique: usize, independent: usize) -> Graph {
    let mut g = Graph::complete(clique).with_isolated(independent);
    for c in 0..clique {
        for v in clique..clique + independent {
            g.add_edge(c, v).expect("valid split edge");
        }
    }
    g
}

/// Odd cycle `C_len`; `len` must be odd and at least 3.
pub fn gen_odd_cycle(len: usize) -> Result<Graph> {
    if len < 3 || len.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "odd cycle length must be odd and >= 3, got {len}"
        )));
    }
    Graph::cycle(len)
}

/// Random `s`-connector on `n <= 64` vertices: non-edges are added in random
/// order (each pair considered with a random probability) as long as the
/// complement stays `K_{s,s}`-free.
pub fn gen_s_connector(n: usize, s: usize, seed: u64) -> Result<Graph> {
    if s == 0 {
        return Err(Error::InvalidInput("s must be at least 1".into()));
    }
    if n > 64 {
        return Err(Error::GuardExceeded {
            what: "connector generator vertex count",
            limit: 64,
            actual: n,
            flag: "--guard-n",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep_prob: f64 = rng.gen_range(0.25..=1.0);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut nonadj = vec![0u64; n];
    for (u, v) in pairs {
        if !rng.gen_bool(keep_prob) {
            continue;
        }
        nonadj[u] |= 1 << v;
        nonadj[v] |= 1 << u;
        if find_bipartite_hole(&nonadj, s).is_some() {
            nonadj[u] &= !(1 << v);
            nonadj[v] &= !(1 << u);
        }
    }
    let mut g = Graph::new(n);
    for (u, row) in nonadj.iter().enumerate() {
        for v in u + 1..n {
            if row & (1 << v) == 0 {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
