use serde::Serialize;
use serde_json::{json, Value};

use super::{c_isolate_logged, cd_saturate_logged, decycle_with};
use crate::coloured::{component_hypergraph, ColouredGraph, SigmaGuard};
use crate::connector::{is_s_connector_with, ConnectorGuard};
use crate::error::{Error, Result};
use crate::graph::{ge_decompose, is_factor_critical, nu_between, vec_to_mask, Graph};

/// One step of the pipeline, written out as a JSON line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEvent {
    pub stage: &'static str,
    pub colour: Option<usize>,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct DistilResult {
    /// The decycled colouring `𝒢'` on the original vertex set.
    pub result: ColouredGraph,
    /// The σ-maximal set uncoloured by decycling.
    pub t: Vec<usize>,
    /// Union of the `C` parts after CD-saturation.
    pub c_star: Vec<usize>,
    pub eta: usize,
    pub kappa: usize,
    /// Largest component of the colouring restricted to `V \ T \ C*`.
    pub k_star: Vec<usize>,
    /// Component of colour `eta` in `𝒢'` containing `k_star`.
    pub k_prime: Vec<usize>,
    pub trace: Vec<TraceEvent>,
}

impl DistilResult {
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            out.push_str(&serde_json::to_string(e).expect("trace serialisation cannot fail"));
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "T": self.t,
            "c_star": self.c_star,
            "eta": self.eta,
            "kappa": self.kappa,
            "k_star": self.k_star,
            "k_prime": self.k_prime,
            "result": serde_json::from_str::<Value>(&self.result.to_json())
                .expect("colouring JSON is valid"),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DistilOptions {
    /// Re-verify every intermediate guarantee and the connector precondition.
    pub checked: bool,
    pub sigma_guard: SigmaGuard,
    pub connector_guard: ConnectorGuard,
}

impl Default for DistilOptions {
    fn default() -> Self {
        DistilOptions {
            checked: true,
            sigma_guard: SigmaGuard::default(),
            connector_guard: ConnectorGuard {
                max_n: 64,
                max_s: 8,
            },
        }
    }
}

/// Structure of a fully-coloured acyclic colouring of an s-connector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallComponentsReport {
    /// A largest component `K` (a single vertex if no colour has an edge).
    pub largest: Vec<usize>,
    pub colour: Option<usize>,
    /// `|V \ K|`.
    pub outside: usize,
    /// `13(s - 1)`.
    pub bound: usize,
    /// Components with more than `s + 1` vertices.
    pub large_edges: usize,
    pub max_pair_intersection: usize,
    pub max_pair_matching: usize,
}

/// Checks that a largest component misses at most `13(s - 1)` vertices, that
/// at most one component exceeds `s + 1` vertices, and that any two
/// components share at most one vertex and are joined by no 2-matching.
pub fn check_small_components(cg: &ColouredGraph, s: usize) -> Result<SmallComponentsReport> {
    check_small_components_with(cg, s, DistilOptions::default().connector_guard)
}

pub fn check_small_components_with(
    cg: &ColouredGraph,
    s: usize,
    guard: ConnectorGuard,
) -> Result<SmallComponentsReport> {
    if s == 0 {
        return Err(Error::precondition(
            "check_small_components",
            "s must be at least 1",
        ));
    }
    if !cg.is_fully_coloured() || !cg.is_acyclic() {
        return Err(Error::precondition(
            "check_small_components",
            "colouring must be fully coloured and acyclic",
        ));
    }
    if !is_s_connector_with(cg.host(), s, guard)?.verdict {
        return Err(Error::precondition(
            "check_small_components",
            format!("host is not a {s}-connector"),
        ));
    }
    small_components_report(cg, s)
}

fn small_components_report(cg: &ColouredGraph, s: usize) -> Result<SmallComponentsReport> {
    let family = component_hypergraph(cg);
    let (largest, colour) = match family.max_edge() {
        Some(e) => (e.vertices.clone(), Some(e.colour)),
        None if cg.n() > 0 => (vec![0], None),
        None => (Vec::new(), None),
    };
    let mut report = SmallComponentsReport {
        outside: cg.n() - largest.len(),
        largest,
        colour,
        bound: 13 * (s - 1),
        large_edges: family
            .edges
            .iter()
            .filter(|e| e.vertices.len() > s + 1)
            .count(),
        max_pair_intersection: 0,
        max_pair_matching: 0,
    };
    let masks: Vec<Vec<bool>> = family
        .edges
        .iter()
        .map(|e| vec_to_mask(cg.n(), &e.vertices))
        .collect();
    for (a, ea) in family.edges.iter().enumerate() {
        for eb in family.edges.iter().skip(a + 1) {
            let common = eb.vertices.iter().filter(|&&v| masks[a][v]).count();
            report.max_pair_intersection = report.max_pair_intersection.max(common);
            let m = nu_between(cg.host(), &ea.vertices, &eb.vertices);
            report.max_pair_matching = report.max_pair_matching.max(m);
            if common > 1 || m > 1 {
                return Err(Error::contract(
                    "bridging components",
                    format!(
                        "components {:?} and {:?} share {common} vertices, matching {m}",
                        ea.vertices, eb.vertices
                    ),
                ));
            }
        }
    }
    if report.large_edges > 1 {
        return Err(Error::contract(
            "unique large component",
            format!(
                "{} components exceed {} vertices",
                report.large_edges,
                s + 1
            ),
        ));
    }
    if report.outside > report.bound {
        return Err(Error::contract(
            "small components",
            format!(
                "{} vertices outside the largest component, bound {}",
                report.outside, report.bound
            ),
        ));
    }
    Ok(report)
}

/// Runs CD-saturation and C-isolation on every colour, then decycling, and
/// locates the dominant factor-critical component.
pub fn distil(cg: &ColouredGraph, s: usize) -> Result<DistilResult> {
    distil_with(cg, s, &DistilOptions::default())
}

pub fn distil_with(cg: &ColouredGraph, s: usize, opts: &DistilOptions) -> Result<DistilResult> {
    let n = cg.n();
    let q = cg.q();
    if s == 0 {
        return Err(Error::precondition("distil", "s must be at least 1"));
    }
    if !cg.is_fully_coloured() {
        return Err(Error::precondition(
            "distil",
            "colouring is not fully coloured",
        ));
    }
    for (j, &v) in cg.nu_vector().iter().enumerate() {
        if 2 * v + 2 * s > n {
            return Err(Error::precondition(
                "distil",
                format!("colour {} has ν = {v} > {n}/2 - {s}", j + 1),
            ));
        }
    }
    let host = cg.host();
    if opts.checked && !is_s_connector_with(host, s, opts.connector_guard)?.verdict {
        return Err(Error::precondition(
            "distil",
            format!("host is not a {s}-connector"),
        ));
    }

    let mut trace = Vec::new();
    let mut in_c_star = vec![false; n];
    let mut layers = vec![Graph::new(n)];
    for j in 1..=q {
        let (saturated, added) = cd_saturate_logged(cg.layer(j), host)?;
        for (u, v) in added {
            trace.push(TraceEvent {
                stage: "cd_saturate",
                colour: Some(j),
                detail: json!({ "added": [u, v] }),
            });
        }
        let c = ge_decompose(&saturated).c;
        if opts.checked && !(c.len() < s || c.len() + 2 * s > n) {
            return Err(Error::contract(
                "cd-saturation",
                format!(
                    "|C| = {} for colour {j} is neither below s nor above n - 2s",
                    c.len()
                ),
            ));
        }
        if c.len() >= s {
            return Err(Error::contract(
                "distilling",
                format!("|C| = {} for colour {j} is not below s = {s}", c.len()),
            ));
        }
        for &v in &c {
            in_c_star[v] = true;
        }
        let (isolated, removed) = c_isolate_logged(&saturated)?;
        for (u, v) in removed {
            trace.push(TraceEvent {
                stage: "c_isolate",
                colour: Some(j),
                detail: json!({ "removed": [u, v] }),
            });
        }
        layers.push(isolated);
    }
    let c_star = crate::graph::mask_to_vec(&in_c_star);
    let compressed = ColouredGraph::from_layers(n, layers)?;

    let (result, t) = decycle_with(&compressed, opts.sigma_guard, opts.checked)?;
    trace.push(TraceEvent {
        stage: "decycle",
        colour: None,
        detail: json!({ "T": t }),
    });

    let in_t = vec_to_mask(n, &t);
    let v_star: Vec<usize> = (0..n).filter(|&v| !in_t[v] && !in_c_star[v]).collect();
    let (restricted, map) = result.induced(&v_star)?;
    if opts.checked {
        if restricted.host() != &host.induced(&v_star)?.0 {
            return Err(Error::contract("distilling", "restriction lost host edges"));
        }
        if !restricted.is_fully_coloured() || !restricted.is_acyclic() {
            return Err(Error::contract(
                "distilling",
                "restriction is not a fully-coloured acyclic colouring",
            ));
        }
        small_components_report(&restricted, s)?;
    }

    let (k_star, eta) = match component_hypergraph(&restricted).max_edge() {
        Some(e) => (
            e.vertices.iter().map(|&v| map[v]).collect::<Vec<_>>(),
            e.colour,
        ),
        None => (map.first().map(|&v| vec![v]).unwrap_or_default(), 1),
    };
    trace.push(TraceEvent {
        stage: "k_star",
        colour: Some(eta),
        detail: json!({ "vertices": k_star }),
    });

    let k_prime = match k_star.first() {
        Some(&v) => result
            .layer(eta)
            .components()
            .into_iter()
            .find(|c| c.contains(&v))
            .expect("every vertex lies in a component"),
        None => Vec::new(),
    };
    if k_prime.len() % 2 == 0 && !k_prime.is_empty() {
        return Err(Error::contract(
            "distilling",
            format!("K' has even size {}", k_prime.len()),
        ));
    }
    let kappa = k_prime.len().saturating_sub(1) / 2;
    trace.push(TraceEvent {
        stage: "k_prime",
        colour: Some(eta),
        detail: json!({ "vertices": k_prime, "kappa": kappa }),
    });

    if opts.checked {
        let in_k_prime = vec_to_mask(n, &k_prime);
        if k_star.iter().any(|&v| !in_k_prime[v]) {
            return Err(Error::contract("distilling", "K* is not inside K'"));
        }
        let (piece, _) = result.layer(eta).induced(&k_prime)?;
        if !is_factor_critical(&piece) {
            return Err(Error::contract("distilling", "K' is not factor-critical"));
        }
        check_distil_bounds(cg, &result, s, t.len(), eta, kappa)?;
    }

    Ok(DistilResult {
        result,
        t,
        c_star,
        eta,
        kappa,
        k_star,
        k_prime,
        trace,
    })
}

/// The three guarantees on `κ`, in integers: `2κ ≥ n - |T| - (q+13)(s-1) - 1`,
/// `ν(𝒢) ≥ ν(𝒢') ≥ κ e_η`, and `ν_Σ(𝒢) ≥ ν_Σ(𝒢') + |T| ≥ κ + |T|`.
fn check_distil_bounds(
    input: &ColouredGraph,
    output: &ColouredGraph,
    s: usize,
    t_len: usize,
    eta: usize,
    kappa: usize,
) -> Result<()> {
    let q = input.q();
    if 2 * kappa + t_len + (q + 13) * (s - 1) + 1 < input.n() {
        return Err(Error::contract(
            "distilling",
            format!(
                "κ = {kappa} below the bound for n = {}, |T| = {t_len}",
                input.n()
            ),
        ));
    }
    let (nu0, nu1) = (input.nu_vector(), output.nu_vector());
    if nu0.iter().zip(&nu1).any(|(a, b)| b > a) || nu1[eta - 1] < kappa {
        return Err(Error::contract(
            "distilling",
            format!("ν chain fails: {nu0:?} ≥ {nu1:?} ≥ {kappa}·e_{eta}"),
        ));
    }
    let (s0, s1) = (input.nu_sigma(), output.nu_sigma());
    if s0 < s1 + t_len || s1 < kappa {
        return Err(Error::contract(
            "distilling",
            format!("ν_Σ chain fails: {s0} ≥ {s1} + {t_len} ≥ {kappa} + {t_len}"),
        ));
    }
    Ok(())
}
