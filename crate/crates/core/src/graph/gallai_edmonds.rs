use serde::Serialize;

use super::matching::{BlossomSearch, NONE};
use super::{mask_to_vec, nu, Graph};

/// Which part of the Gallai-Edmonds partition a vertex lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeClass {
    C,
    A,
    D,
}

/// `(C, A, D)` plus the components of `G[D]`.
///
/// `d` is the set of inessential vertices (missed by some maximum matching),
/// `a` the remaining vertices with a neighbour in `d`, and `c` the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeDecomposition {
    pub c: Vec<usize>,
    pub a: Vec<usize>,
    pub d: Vec<usize>,
    pub d_components: Vec<Vec<usize>>,
    pub nu: usize,
    class: Vec<GeClass>,
}

impl GeDecomposition {
    pub fn class_of(&self, v: usize) -> GeClass {
        self.class[v]
    }

    /// Number of components of `G[D]`, written `k(D)`.
    pub fn k_d(&self) -> usize {
        self.d_components.len()
    }

    /// `C` is empty.
    pub fn is_ad_pure(&self) -> bool {
        self.c.is_empty()
    }

    /// `C` and `A` are both empty.
    pub fn is_d_pure(&self) -> bool {
        self.c.is_empty() && self.a.is_empty()
    }
}

/// Gallai-Edmonds decomposition. A vertex `v` is inessential iff
/// `ν(g - v) = ν(g)`; vertices left exposed by the one maximum matching we
/// compute are inessential without further work.
pub fn ge_decompose(g: &Graph) -> GeDecomposition {
    let n = g.n();
    let mut search = BlossomSearch::new(n);
    let mut base_mate = vec![NONE; n];
    search.maximise(&g.adj, None, &mut base_mate);
    let size = base_mate.iter().filter(|&&m| m != NONE).count() / 2;

    let mut in_d = vec![false; n];
    let mut active = vec![true; n];
    for v in 0..n {
        if base_mate[v] == NONE {
            in_d[v] = true;
            continue;
        }
        // Deleting a matched vertex loses its edge; `g - v` keeps ν iff an
        // augmenting path exists, and any such path ends at the now-exposed
        // partner (otherwise it would augment the original matching).
        let partner = base_mate[v];
        let mut mate = base_mate.clone();
        mate[v] = NONE;
        mate[partner] = NONE;
        active[v] = false;
        in_d[v] = search.augment_from(&g.adj, Some(&active), &mut mate, partner);
        active[v] = true;
    }

    let mut class = vec![GeClass::C; n];
    for v in 0..n {
        if in_d[v] {
            class[v] = GeClass::D;
        } else if g.neighbors(v).iter().any(|&w| in_d[w]) {
            class[v] = GeClass::A;
        }
    }
    let pick = |k: GeClass| -> Vec<usize> { (0..n).filter(|&v| class[v] == k).collect() };
    GeDecomposition {
        c: pick(GeClass::C),
        a: pick(GeClass::A),
        d: mask_to_vec(&in_d),
        d_components: g.components_within(&in_d),
        nu: size,
        class,
    }
}

/// `g - v` has a perfect matching for every vertex `v`. The single-vertex
/// graph qualifies; the empty graph on zero vertices does too, vacuously.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if n.is_multiple_of(2) || nu(g) != (n - 1) / 2 {
        return false;
    }
    // With ν = (n-1)/2 every vertex must be inessential.
    ge_decompose(g).d.len() == n
}
