use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::coloured::ColouredGraph;
use crate::connector::TVector;
use crate::error::Result;
use crate::graph::Graph;

/// Families of colourings used to attack an arrow claim by sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Adversary {
    /// Every edge gets an independent uniform colour.
    Uniform,
    /// Independent colours with random (non-uniform) colour weights.
    Biased,
    /// Random disjoint sets `X_1, ..., X_{q-1}`; an edge takes the least `j`
    /// with an endpoint in `X_j`, otherwise colour `q`.
    Cover,
    /// The extremal block colouring laid over a random vertex order, with
    /// surplus vertices joining the first block.
    ClBlocks,
    /// One random centre per colour; an edge takes the least colour whose
    /// centre it contains, otherwise a uniform colour.
    SplitStar,
}

impl Adversary {
    pub const ALL: [Adversary; 5] = [
        Adversary::Uniform,
        Adversary::Biased,
        Adversary::Cover,
        Adversary::ClBlocks,
        Adversary::SplitStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Adversary::Uniform => "uniform",
            Adversary::Biased => "biased",
            Adversary::Cover => "cover",
            Adversary::ClBlocks => "cl-blocks",
            Adversary::SplitStar => "split-star",
        }
    }
}

/// Samples a fully-coloured (one colour per edge) colouring of `g` with
/// `t.q()` colours.
pub fn adversarial_colouring<R: Rng>(
    g: &Graph,
    t: &TVector,
    kind: Adversary,
    rng: &mut R,
) -> Result<ColouredGraph> {
    let n = g.n();
    let q = t.q();
    let edges = g.edge_vec();
    let colours: Vec<usize> = match kind {
        Adversary::Uniform => edges.iter().map(|_| rng.gen_range(1..=q)).collect(),
        Adversary::Biased => {
            let weights: Vec<f64> = (0..q).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = weights.iter().sum();
            edges
                .iter()
                .map(|_| {
                    let mut x = rng.gen_range(0.0..total);
                    for (j, w) in weights.iter().enumerate() {
                        if x < *w {
                            return j + 1;
                        }
                        x -= w;
                    }
                    q
                })
                .collect()
        }
        Adversary::Cover => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut part = vec![q; n];
            let mut next = 0;
            for j in 1..q {
                let cap = (t.get(j) - 1).max(n / (2 * q));
                let size = rng.gen_range(0..=cap).min(n - next);
                for &v in &perm[next..next + size] {
                    part[v] = j;
                }
                next += size;
            }
            edges.iter().map(|&(u, v)| part[u].min(part[v])).collect()
        }
        Adversary::ClBlocks => {
            let mut order: Vec<usize> = (1..=q).collect();
            order.sort_by_key(|&j| std::cmp::Reverse(t.get(j)));
            let mut block_sizes: Vec<usize> = order
                .iter()
                .enumerate()
                .map(|(pos, &j)| {
                    if pos == 0 {
                        2 * t.get(j) - 1
                    } else {
                        t.get(j) - 1
                    }
                })
                .collect();
            let used: usize = block_sizes.iter().sum();
            if used < n {
                block_sizes[0] += n - used;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut block = vec![0; n];
            let mut next = 0;
            for (pos, &size) in block_sizes.iter().enumerate() {
                for &v in perm.iter().skip(next).take(size) {
                    block[v] = pos;
                }
                next += size;
            }
            edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (block[u].min(block[v]), block[u].max(block[v]));
                    order[if a == 0 { b } else { a }]
                })
                .collect()
        }
        Adversary::SplitStar => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut centre_of = vec![usize::MAX; n];
            for (j, &v) in perm.iter().take(q).enumerate() {
                centre_of[v] = j + 1;
            }
            edges
                .iter()
                .map(|&(u, v)| match centre_of[u].min(centre_of[v]) {
                    usize::MAX => rng.gen_range(1..=q),
                    j => j,
                })
                .collect()
        }
    };
    ColouredGraph::from_edge_colours(g.clone(), q, &colours)
}
