//! The set functions
//!
//! ```text
//! r(T) = Σ_j |A_j ∩ T| + Σ_{j,i} (ν(G_j[K_j^i]) - ν(G_j[K_j^i \ T]))
//! σ(T) = r(T) - |T|
//! ```
//!
//! and an exact search for a σ-maximal set: a global maximiser of σ that is
//! inclusion-maximal among maximisers, so every strict superset scores
//! strictly less.

use serde::Serialize;

use super::ColouredGraph;
use crate::error::{Error, Result};
use crate::graph::{ge_decompose, nu_within, vec_to_mask, GeDecomposition, Graph};

/// Per-colour Gallai-Edmonds data of a colouring, fixed at construction.
#[derive(Clone, Debug)]
pub struct SigmaContext {
    n: usize,
    layers: Vec<Graph>,
    ge: Vec<GeDecomposition>,
    components: Vec<DComponent>,
}

/// One component `K_j^i` of `G_j[D_j]`.
#[derive(Clone, Debug)]
struct DComponent {
    colour: usize,
    vertices: Vec<usize>,
    nu: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaValue {
    pub r: i64,
    pub sigma: i64,
}

/// Limit on the number of free vertices searched jointly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaGuard {
    pub max_block: usize,
}

impl Default for SigmaGuard {
    fn default() -> Self {
        SigmaGuard { max_block: 24 }
    }
}

impl SigmaContext {
    pub fn new(cg: &ColouredGraph) -> Self {
        let layers: Vec<Graph> = cg.colour_layers().to_vec();
        let ge: Vec<GeDecomposition> = layers.iter().map(ge_decompose).collect();
        let mut components = Vec::new();
        for (j, (layer, dec)) in layers.iter().zip(&ge).enumerate() {
            for comp in &dec.d_components {
                let nu = nu_within(layer, &vec_to_mask(layer.n(), comp));
                components.push(DComponent {
                    colour: j + 1,
                    vertices: comp.clone(),
                    nu,
                });
            }
        }
        SigmaContext {
            n: cg.n(),
            layers,
            ge,
            components,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.layers.len()
    }

    /// Decomposition of colour `j` (1-based).
    pub fn ge(&self, j: usize) -> &GeDecomposition {
        &self.ge[j - 1]
    }

    /// `⋃_j A_j`, sorted.
    pub fn a_union(&self) -> Vec<usize> {
        let mut mask = vec![false; self.n];
        for dec in &self.ge {
            for &v in &dec.a {
                mask[v] = true;
            }
        }
        crate::graph::mask_to_vec(&mask)
    }
}

/// Evaluates `r(T)` and `σ(T)` from scratch.
pub fn sigma_eval(ctx: &SigmaContext, t: &[usize]) -> SigmaValue {
    let in_t = vec_to_mask(ctx.n, t);
    let size = in_t.iter().filter(|&&b| b).count() as i64;
    let mut r: i64 = ctx
        .ge
        .iter()
        .map(|dec| dec.a.iter().filter(|&&v| in_t[v]).count() as i64)
        .sum();
    for k in &ctx.components {
        if k.vertices.iter().any(|&v| in_t[v]) {
            let mut rest = vec![false; ctx.n];
            for &v in &k.vertices {
                rest[v] = !in_t[v];
            }
            let after = nu_within(&ctx.layers[k.colour - 1], &rest);
            r += (k.nu - after) as i64;
        }
    }
    SigmaValue { r, sigma: r - size }
}

/// Finds a σ-maximal set exactly.
///
/// Any σ-maximal set contains every `A_j`, and a vertex outside `⋃A_j` that
/// lies in no D-component with an edge always lowers σ by one, so only the
/// remaining "free" vertices are searched. σ splits into independent sums
/// over blocks of free vertices linked by shared D-components; each block
/// is enumerated in Gray-code order against precomputed tables of
/// `ν(G_j[K \ U])` for every subset `U`. Among maximisers of a block the one
/// with the most vertices (then the smallest bitmask) is kept, which is
/// inclusion-maximal.
pub fn sigma_maximal(ctx: &SigmaContext, guard: SigmaGuard) -> Result<Vec<usize>> {
    let n = ctx.n;
    if n > 64 {
        return Err(Error::GuardExceeded {
            what: "sigma search vertex count",
            limit: 64,
            actual: n,
            flag: "--guard-n",
        });
    }
    let forced = vec_to_mask(n, &ctx.a_union());
    let relevant: Vec<&DComponent> = ctx.components.iter().filter(|k| k.nu > 0).collect();

    // Union free vertices that share a relevant component.
    let mut block_of: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut free = vec![false; n];
    for k in &relevant {
        let mut first = None;
        for &v in k.vertices.iter().filter(|&&v| !forced[v]) {
            free[v] = true;
            match first {
                None => first = Some(v),
                Some(f) => {
                    let (a, b) = (root(&mut block_of, f), root(&mut block_of, v));
                    if a != b {
                        block_of[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_index = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| free[v]) {
        let r = root(&mut block_of, v);
        if block_index[r] == usize::MAX {
            block_index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_index[r]].push(v);
    }

    let mut chosen = forced.clone();
    for block in &blocks {
        // Component tables are indexed by u32 masks.
        let limit = guard.max_block.min(30);
        if block.len() > limit {
            return Err(Error::GuardExceeded {
                what: "sigma search block size",
                limit,
                actual: block.len(),
                flag: "--guard-n",
            });
        }
        let in_block = vec_to_mask(n, block);
        let comps: Vec<&DComponent> = relevant
            .iter()
            .copied()
            .filter(|k| k.vertices.iter().any(|&v| in_block[v]))
            .collect();
        for v in search_block(ctx, block, &comps, &forced) {
            chosen[v] = true;
        }
    }
    Ok(crate::graph::mask_to_vec(&chosen))
}

/// Table over subsets `U` of a component's free vertices (in local bit
/// order) holding `ν(G[free \ U])`.
fn remaining_nu_table(layer: &Graph, free: &[usize]) -> Vec<u8> {
    let k = free.len();
    let mut local = vec![usize::MAX; layer.n()];
    for (i, &v) in free.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<u32> = free
        .iter()
        .map(|&v| {
            layer
                .neighbors(v)
                .iter()
                .filter(|&&w| local[w] != usize::MAX)
                .fold(0u32, |acc, &w| acc | (1 << local[w]))
        })
        .collect();
    // nu_of[S] = ν of the subgraph induced by S: the lowest vertex of S is
    // either unmatched or matched to a neighbour inside S.
    let full = (1usize << k) - 1;
    let mut nu_of = vec![0u8; 1 << k];
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let without = s & !(1 << v);
        let mut best = nu_of[without];
        let mut nbrs = adj[v] as usize & without;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            best = best.max(1 + nu_of[without & !(1 << w)]);
        }
        nu_of[s] = best;
    }
    // Re-index by the removed set U = complement of S.
    (0..=full).map(|u| nu_of[full & !u]).collect()
}

fn search_block(
    ctx: &SigmaContext,
    block: &[usize],
    comps: &[&DComponent],
    forced: &[bool],
) -> Vec<usize> {
    let b = block.len();
    let mut pos = vec![usize::MAX; ctx.n];
    for (i, &v) in block.iter().enumerate() {
        pos[v] = i;
    }
    // For each block vertex, the components it lies in with its local bit.
    let mut memberships: Vec<Vec<(usize, u32)>> = vec![Vec::new(); b];
    let mut tables = Vec::with_capacity(comps.len());
    for (ci, k) in comps.iter().enumerate() {
        let free: Vec<usize> = k.vertices.iter().copied().filter(|&v| !forced[v]).collect();
        for (bit, &v) in free.iter().enumerate() {
            memberships[pos[v]].push((ci, 1 << bit));
        }
        tables.push(remaining_nu_table(&ctx.layers[k.colour - 1], &free));
    }

    // Up to an additive constant, σ on the block is
    // -|U| + Σ_K (ν_K - table_K[U ∩ K]); track Σ_K -table_K[U ∩ K] - |U|.
    let mut local_mask = vec![0u32; comps.len()];
    let mut value: i64 = -tables.iter().map(|t| t[0] as i64).sum::<i64>();
    let mut mask: u64 = 0;
    let mut best = (value, 0u32, 0u64);
    for i in 1u64..(1u64 << b) {
        let bit = i.trailing_zeros() as usize;
        let adding = mask & (1 << bit) == 0;
        mask ^= 1 << bit;
        value += if adding { -1 } else { 1 };
        for &(ci, local_bit) in &memberships[bit] {
            let before = tables[ci][local_mask[ci] as usize] as i64;
            local_mask[ci] ^= local_bit;
            let after = tables[ci][local_mask[ci] as usize] as i64;
            value += before - after;
        }
        let count = mask.count_ones();
        if value > best.0
            || (value == best.0 && (count > best.1 || (count == best.1 && mask < best.2)))
        {
            best = (value, count, mask);
        }
    }
    (0..b)
        .filter(|&i| best.2 & (1 << i) != 0)
        .map(|i| block[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(layer: Graph) -> ColouredGraph {
        let n = layer.n();
        ColouredGraph::from_layers(n, vec![Graph::new(n), layer]).unwrap()
    }

    #[test]
    fn empty_set_scores_zero() {
        let ctx = SigmaContext::new(&single(Graph::cycle(5).unwrap()));
        assert_eq!(sigma_eval(&ctx, &[]), SigmaValue { r: 0, sigma: 0 });
    }

    #[test]
    fn c5_two_adjacent_vertices() {
        let ctx = SigmaContext::new(&single(Graph::cycle(5).unwrap()));
        assert_eq!(sigma_eval(&ctx, &[0, 1]), SigmaValue { r: 1, sigma: -1 });
    }

    #[test]
    fn p3_centre() {
        let ctx = SigmaContext::new(&single(Graph::path(3)));
        assert_eq!(sigma_eval(&ctx, &[1]), SigmaValue { r: 1, sigma: 0 });
        let t = sigma_maximal(&ctx, SigmaGuard::default()).unwrap();
        assert!(t.contains(&1));
    }

    #[test]
    fn c5_maximal_is_empty() {
        // Every non-empty T has σ < 0 on a single odd cycle.
        let ctx = SigmaContext::new(&single(Graph::cycle(5).unwrap()));
        assert_eq!(
            sigma_maximal(&ctx, SigmaGuard::default()).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn remaining_nu_table_on_triangle() {
        let tri = Graph::complete(3);
        let t = remaining_nu_table(&tri, &[0, 1, 2]);
        assert_eq!(t[0], 1);
        assert_eq!(t[0b001], 1);
        assert_eq!(t[0b011], 0);
        assert_eq!(t[0b111], 0);
    }

    #[test]
    fn guard_is_enforced() {
        let ctx = SigmaContext::new(&single(Graph::cycle(7).unwrap()));
        let err = sigma_maximal(&ctx, SigmaGuard { max_block: 5 }).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { actual: 7, .. }));
    }
}
