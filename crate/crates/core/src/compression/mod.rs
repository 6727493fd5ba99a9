//! Single-colour compressions (CD-saturation, C-isolation), multicolour
//! decycling, and the distilling pipeline that chains them. Every stage
//! re-checks the guarantees it is supposed to deliver and reports a
//! [`Error::Contract`] if one fails.

mod distil;

pub use distil::{
    check_small_components, check_small_components_with, distil, distil_with, DistilOptions,
    DistilResult, SmallComponentsReport, TraceEvent,
};

use crate::coloured::{
    is_hyperforest, k_hypergraph, sigma_eval, sigma_maximal, ColouredGraph, SigmaContext,
    SigmaGuard,
};
use crate::error::{Error, Result};
use crate::graph::{ge_decompose, is_factor_critical, nu, GeClass, Graph};

/// Adds host edges between `C` and `D` one at a time (always the
/// lexicographically smallest) until the host has none left, recomputing the
/// decomposition after every addition.
pub fn cd_saturate(g: &Graph, host: &Graph) -> Result<Graph> {
    cd_saturate_logged(g, host).map(|(g, _)| g)
}

pub(crate) fn cd_saturate_logged(g: &Graph, host: &Graph) -> Result<(Graph, Vec<(usize, usize)>)> {
    if g.n() != host.n() || !g.is_subgraph_of(host) {
        return Err(Error::precondition(
            "cd_saturate",
            "graph is not a spanning subgraph of the host",
        ));
    }
    let mut cur = g.clone();
    let mut added = Vec::new();
    loop {
        let ge = ge_decompose(&cur);
        let crossing = host.edges().find(|&(u, v)| {
            matches!(
                (ge.class_of(u), ge.class_of(v)),
                (GeClass::C, GeClass::D) | (GeClass::D, GeClass::C)
            )
        });
        match crossing {
            Some((u, v)) => {
                cur.add_edge(u, v)?;
                added.push((u, v));
            }
            None => break,
        }
    }
    if added.len() > host.m() - g.m() {
        return Err(Error::contract(
            "cd-saturation",
            "more iterations than missing host edges",
        ));
    }
    let (before, after) = (nu(g), nu(&cur));
    if before != after {
        return Err(Error::contract(
            "cd-saturation",
            format!("matching number changed from {before} to {after}"),
        ));
    }
    Ok((cur, added))
}

/// Deletes every edge incident to `C`.
pub fn c_isolate(g: &Graph) -> Result<Graph> {
    c_isolate_logged(g).map(|(g, _)| g)
}

pub(crate) fn c_isolate_logged(g: &Graph) -> Result<(Graph, Vec<(usize, usize)>)> {
    let ge = ge_decompose(g);
    if ge.c.len() % 2 == 1 {
        return Err(Error::contract(
            "c-isolation",
            format!("|C| = {} is odd", ge.c.len()),
        ));
    }
    let mut out = g.clone();
    let mut removed = Vec::new();
    for (u, v) in g.edges() {
        if ge.class_of(u) == GeClass::C || ge.class_of(v) == GeClass::C {
            out.remove_edge(u, v);
            removed.push((u, v));
        }
    }
    let after = ge_decompose(&out);
    if !after.c.is_empty() {
        return Err(Error::contract("c-isolation", "C is not empty afterwards"));
    }
    if after.a != ge.a {
        return Err(Error::contract(
            "c-isolation",
            format!("A changed from {:?} to {:?}", ge.a, after.a),
        ));
    }
    if after.nu + ge.c.len() / 2 != ge.nu {
        return Err(Error::contract(
            "c-isolation",
            format!(
                "ν went from {} to {} with |C| = {}",
                ge.nu,
                after.nu,
                ge.c.len()
            ),
        ));
    }
    Ok((out, removed))
}

/// Uncolours a σ-maximal set `T`. The input must be fully coloured with no
/// `C` part in any colour.
pub fn decycle(cg: &ColouredGraph) -> Result<(ColouredGraph, Vec<usize>)> {
    decycle_with(cg, SigmaGuard::default(), true)
}

pub fn decycle_with(
    cg: &ColouredGraph,
    guard: SigmaGuard,
    checked: bool,
) -> Result<(ColouredGraph, Vec<usize>)> {
    if !cg.is_fully_coloured() {
        return Err(Error::precondition(
            "decycle",
            "colouring is not fully coloured",
        ));
    }
    if !cg.is_ad_pure() {
        return Err(Error::precondition(
            "decycle",
            "some colour has a non-empty C part",
        ));
    }
    let ctx = SigmaContext::new(cg);
    let t = sigma_maximal(&ctx, guard)?;
    let out = cg.uncolour(&t);
    if checked {
        check_sigma_maximal_consequences(cg, &ctx, &t)?;
        check_decycle(cg, &out, &t)?;
    }
    Ok((out, t))
}

/// The structural consequences of σ-maximality: `T ⊇ A_j`, every component
/// of `G_j[K \ T]` is factor-critical, and the D-component hypergraph of the
/// uncoloured result is a hyperforest.
pub fn check_sigma_maximal_consequences(
    cg: &ColouredGraph,
    ctx: &SigmaContext,
    t: &[usize],
) -> Result<()> {
    let in_t = crate::graph::vec_to_mask(cg.n(), t);
    if sigma_eval(ctx, t).sigma < 0 {
        return Err(Error::contract("sigma-maximal", "σ(T) is negative"));
    }
    for j in 1..=cg.q() {
        let dec = ctx.ge(j);
        if let Some(&y) = dec.a.iter().find(|&&y| !in_t[y]) {
            return Err(Error::contract(
                "sigma-maximal",
                format!("vertex {y} of A_{j} is outside T"),
            ));
        }
        let layer = cg.layer(j);
        for k in &dec.d_components {
            let rest: Vec<usize> = k.iter().copied().filter(|&v| !in_t[v]).collect();
            let (sub, _) = layer.induced(&rest)?;
            for comp in sub.components() {
                let (piece, _) = sub.induced(&comp)?;
                if !is_factor_critical(&piece) {
                    return Err(Error::contract(
                        "sigma-maximal",
                        format!("a component of colour {j} outside T is not factor-critical"),
                    ));
                }
            }
        }
    }
    if !is_hyperforest(&k_hypergraph(&cg.uncolour(t))) {
        return Err(Error::contract(
            "sigma-maximal",
            "D-component hypergraph has a cycle",
        ));
    }
    Ok(())
}

fn check_decycle(before: &ColouredGraph, after: &ColouredGraph, t: &[usize]) -> Result<()> {
    let (nu0, nu1) = (before.nu_vector(), after.nu_vector());
    if nu0.iter().zip(&nu1).any(|(a, b)| b > a) {
        return Err(Error::contract(
            "decycling",
            format!("ν increased from {nu0:?} to {nu1:?}"),
        ));
    }
    let (s0, s1) = (before.nu_sigma(), after.nu_sigma());
    if s1 + t.len() > s0 {
        return Err(Error::contract(
            "decycling",
            format!("ν_Σ went from {s0} to {s1} with |T| = {}", t.len()),
        ));
    }
    if !after.is_s_proper(t) {
        return Err(Error::contract("decycling", "result is not T-proper"));
    }
    if !after.is_d_acyclic() {
        return Err(Error::contract("decycling", "result is not D-acyclic"));
    }
    Ok(())
}
