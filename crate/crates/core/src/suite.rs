//! Randomised and exhaustive verification suites, shared by the command-line
//! `verify` command. Each suite returns the failures it saw rather than
//! panicking, so a run reports everything at once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloured::{is_hyperforest, k_hypergraph, ColouredGraph, SigmaContext};
use crate::compression::{
    c_isolate, cd_saturate, check_sigma_maximal_consequences, check_small_components, decycle,
    distil,
};
use crate::connector::{
    alpha_star, cl_extremal, gen_gnp, gen_s_connector, is_s_connector, sharp_construction, TVector,
};
use crate::error::{Error, Result};
use crate::graph::{ge_decompose, is_factor_critical, nu, Graph};
use crate::ramsey::{adversarial_colouring, arrows, rho, verify_theorem_main, Adversary};

pub const SUITES: [&str; 10] = [
    "ge",
    "connector",
    "compression",
    "decycle",
    "distil",
    "structure",
    "cl",
    "sharp",
    "discussion",
    "theorem",
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<&'static str>,
    pub instances: usize,
    pub seed: u64,
    pub failures: Vec<String>,
    /// Per-instance rows for suites that tabulate results.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<&'static str>, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks,
            instances: 0,
            seed,
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, outcome: Result<()>, context: impl FnOnce() -> String) {
        self.instances += 1;
        if let Err(e) = outcome {
            self.failures.push(format!("{}: {e}", context()));
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub q: usize,
    pub max_r: usize,
    pub s: usize,
    pub t: Option<TVector>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 100,
            seed: 0,
            max_n: 8,
            q: 2,
            max_r: 7,
            s: 2,
            t: None,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "ge" => Ok(ge_suite(cfg)),
        "connector" => Ok(connector_suite(cfg)),
        "compression" => Ok(compression_suite(cfg)),
        "decycle" => Ok(decycle_suite(cfg)),
        "distil" => Ok(distil_suite(cfg)),
        "structure" => Ok(structure_suite(cfg)),
        "cl" => cl_suite(cfg),
        "sharp" => Ok(sharp_suite()),
        "discussion" => Ok(discussion_suite()),
        "theorem" => theorem_suite(cfg),
        other => Err(Error::InvalidInput(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn fail(what: &'static str, detail: impl Into<String>) -> Error {
    Error::contract(what, detail)
}

/// Checks the Gallai-Edmonds structure of one graph: the deficiency formula,
/// factor-critical D-components, and stability under deleting `A` vertices.
pub fn check_ge_structure(g: &Graph) -> Result<()> {
    let n = g.n();
    let ge = ge_decompose(g);
    if ge.c.len() + ge.a.len() + ge.d.len() != n {
        return Err(fail("decomposition", "C, A, D do not partition V"));
    }
    if n as i64 - 2 * nu(g) as i64 != ge.k_d() as i64 - ge.a.len() as i64 {
        return Err(fail(
            "deficiency",
            format!(
                "n = {n}, ν = {}, k(D) = {}, |A| = {}",
                ge.nu,
                ge.k_d(),
                ge.a.len()
            ),
        ));
    }
    for comp in &ge.d_components {
        if !is_factor_critical(&g.induced(comp)?.0) {
            return Err(fail("factor-critical components", format!("{comp:?}")));
        }
    }
    for &v in &ge.a {
        let (h, map) = g.remove_vertex(v)?;
        let sub = ge_decompose(&h);
        for (i, &old) in map.iter().enumerate() {
            if sub.class_of(i) != ge.class_of(old) {
                return Err(fail(
                    "stability",
                    format!(
                        "deleting {v} moves {old} from {:?} to {:?}",
                        ge.class_of(old),
                        sub.class_of(i)
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn ge_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(
        "ge",
        vec!["deficiency", "factor-critical components", "stability"],
        cfg.seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.max_n {
        for _ in 0..cfg.trials {
            let p = rng.gen_range(0.05..0.95);
            let g = gen_gnp(n, p, rng.gen()).expect("valid probability");
            report.record(check_ge_structure(&g), || format!("graph {}", g.to_json()));
        }
    }
    report
}

fn connector_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(
        "connector",
        vec!["alpha-star equivalence", "monotonicity"],
        cfg.seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let n = rng.gen_range(1..=cfg.max_n.clamp(1, 12));
        let g = gen_gnp(n, rng.gen_range(0.2..0.95), rng.gen()).expect("valid probability");
        let outcome = (|| {
            let a = alpha_star(&g, 12)?;
            let mut previous = false;
            for s in 1..=4 {
                let c = is_s_connector(&g, s)?.verdict;
                if c != (a < s) {
                    return Err(fail(
                        "alpha-star equivalence",
                        format!("s = {s}, alpha* = {a}"),
                    ));
                }
                if previous && !c {
                    return Err(fail("monotonicity", format!("fails at s = {s}")));
                }
                previous = c;
            }
            Ok(())
        })();
        report.record(outcome, || format!("graph {}", g.to_json()));
    }
    report
}

/// A random s-connector host on at most `max_n` vertices together with a
/// random spanning subgraph.
pub fn random_host_and_subgraph<R: Rng>(
    rng: &mut R,
    max_n: usize,
    s: usize,
) -> Result<(Graph, Graph)> {
    let n = rng.gen_range(1..=max_n);
    let host = gen_s_connector(n, s, rng.gen())?;
    let keep = rng.gen_range(0.1..0.9);
    let mut g = Graph::new(n);
    for (u, v) in host.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(u, v)?;
        }
    }
    Ok((host, g))
}

/// Checks CD-saturation and C-isolation on one instance.
pub fn check_compressions(g: &Graph, host: &Graph, s: usize) -> Result<()> {
    let sat = cd_saturate(g, host)?;
    let c = ge_decompose(&sat).c.len();
    if !(c < s || c + 2 * s > g.n()) {
        return Err(fail(
            "cd-saturation",
            format!("|C'| = {c} with s = {s}, n = {}", g.n()),
        ));
    }
    c_isolate(g)?;
    c_isolate(&sat)?;
    Ok(())
}

fn compression_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(
        "compression",
        vec!["cd-saturation", "c-isolation"],
        cfg.seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let s = rng.gen_range(1..=3);
        let instance = random_host_and_subgraph(&mut rng, cfg.max_n.max(12), s);
        let outcome = instance
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|(h, g)| check_compressions(g, h, s));
        report.record(outcome, || format!("s = {s}"));
    }
    report
}

/// A random fully-coloured colouring with no `C` part in any colour: a
/// random colouring of a random graph after C-isolating every colour.
pub fn random_ad_pure_colouring<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_q: usize,
) -> Result<ColouredGraph> {
    let n = rng.gen_range(1..=max_n);
    let q = rng.gen_range(1..=max_q);
    let g = gen_gnp(n, rng.gen_range(0.2..0.8), rng.gen())?;
    let colours: Vec<usize> = g.edges().map(|_| rng.gen_range(1..=q)).collect();
    let cg = ColouredGraph::from_edge_colours(g, q, &colours)?;
    let mut layers = vec![Graph::new(n)];
    for layer in cg.colour_layers() {
        layers.push(c_isolate(layer)?);
    }
    ColouredGraph::from_layers(n, layers)
}

/// Decycles one colouring and re-checks the σ-maximal consequences.
pub fn check_decycle_instance(cg: &ColouredGraph) -> Result<()> {
    let (out, t) = decycle(cg)?;
    check_sigma_maximal_consequences(cg, &SigmaContext::new(cg), &t)?;
    if !is_hyperforest(&k_hypergraph(&out)) {
        return Err(fail("decycling", "D-component hypergraph has a cycle"));
    }
    Ok(())
}

fn decycle_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(
        "decycle",
        vec![
            "sigma-maximal consequences",
            "ν monotone",
            "ν_Σ drop",
            "T-proper",
            "D-acyclic",
        ],
        cfg.seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let outcome = random_ad_pure_colouring(&mut rng, cfg.max_n.max(12), 3)
            .and_then(|cg| check_decycle_instance(&cg).map_err(|e| annotate(e, &cg)));
        report.record(outcome, String::new);
    }
    report
}

fn annotate(e: Error, cg: &ColouredGraph) -> Error {
    match e {
        Error::Contract { label, detail } => Error::Contract {
            label,
            detail: format!("{detail} on {}", cg.to_json()),
        },
        other => other,
    }
}

/// A fully-coloured colouring of a random s-connector on `n` vertices whose
/// colours all have `ν ≤ n/2 - s`, found by rejection over the adversary
/// families. `None` if no attempt qualifies.
pub fn random_distil_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    s: usize,
    q: usize,
    attempts: usize,
) -> Result<Option<ColouredGraph>> {
    let host = gen_s_connector(n, s, rng.gen())?;
    for _ in 0..attempts {
        let kind = Adversary::ALL[rng.gen_range(0..Adversary::ALL.len())];
        let t = TVector::new((0..q).map(|_| rng.gen_range(1..=n / 2 + 1)).collect())?;
        let cg = adversarial_colouring(&host, &t, kind, rng)?;
        if cg.nu_vector().iter().all(|&v| 2 * v + 2 * s <= n) {
            return Ok(Some(cg));
        }
    }
    Ok(None)
}

fn distil_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("distil", vec!["κ bound", "ν chain", "ν_Σ chain"], cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while report.instances < cfg.trials {
        let n = rng.gen_range(4..=cfg.max_n.max(12));
        let s = rng.gen_range(1..=2);
        let q = rng.gen_range(1..=3);
        match random_distil_instance(&mut rng, n, s, q, 50) {
            Ok(Some(cg)) => {
                let outcome = distil(&cg, s).map(|_| ()).map_err(|e| annotate(e, &cg));
                report.record(outcome, || format!("n = {n}, s = {s}, q = {q}"));
            }
            Ok(None) => {}
            Err(e) => report.record(Err(e), || format!("n = {n}, s = {s}")),
        }
    }
    report
}

/// Distils one instance and checks the structure of the restriction to
/// `V \ T \ C*`.
pub fn check_structure_instance(cg: &ColouredGraph, s: usize) -> Result<()> {
    let out = distil(cg, s)?;
    let mut removed = vec![false; cg.n()];
    for &v in out.t.iter().chain(&out.c_star) {
        removed[v] = true;
    }
    let keep: Vec<usize> = (0..cg.n()).filter(|&v| !removed[v]).collect();
    let (restricted, _) = out.result.induced(&keep)?;
    check_small_components(&restricted, s)?;
    Ok(())
}

fn structure_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(
        "structure",
        vec![
            "pairwise intersections",
            "pairwise matchings",
            "unique large component",
            "small components",
        ],
        cfg.seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while report.instances < cfg.trials {
        let s = rng.gen_range(1..=3);
        let n = rng.gen_range(2 * s..=cfg.max_n.max(20));
        let q = rng.gen_range(1..=3);
        match random_distil_instance(&mut rng, n, s, q, 50) {
            Ok(Some(cg)) => {
                let outcome = check_structure_instance(&cg, s).map_err(|e| annotate(e, &cg));
                report.record(outcome, || format!("n = {n}, s = {s}, q = {q}"));
            }
            Ok(None) => {}
            Err(e) => report.record(Err(e), || format!("n = {n}, s = {s}")),
        }
    }
    report
}

/// All target vectors with `q` entries and `‖t‖∞ + Λ_t + 1 ≤ max_r`.
pub fn targets_up_to(q: usize, max_r: usize) -> Vec<TVector> {
    targets_with_entries_at_most(q, max_r)
        .into_iter()
        .filter(|t| t.tmax() + t.lambda() < max_r)
        .collect()
}

/// All target vectors with `q` entries in `1..=max_entry`.
pub fn targets_with_entries_at_most(q: usize, max_entry: usize) -> Vec<TVector> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=max_entry).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|e| TVector::new(e).expect("positive entries"))
        .collect()
}

fn cl_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(
        "cl",
        vec!["arrows at bound", "extremal colouring below bound"],
        cfg.seed,
    );
    for t in targets_up_to(cfg.q, cfg.max_r) {
        let bound = t.tmax() + t.lambda() + 1;
        let upper = arrows(&Graph::complete(bound), &t)?;
        let lower = arrows(&Graph::complete(bound - 1), &t)?;
        let (_, extremal) = cl_extremal(&t);
        report.details.push(json!({
            "t": t.entries(),
            "bound": bound,
            "arrows_at_bound": upper.arrows,
            "arrows_below_bound": lower.arrows,
            "extremal_avoids": extremal.avoids(t.entries()),
        }));
        let outcome = if !upper.arrows {
            Err(fail(
                "cockayne-lorimer",
                format!("K_{bound} does not arrow"),
            ))
        } else if lower.arrows {
            Err(fail("cockayne-lorimer", format!("K_{} arrows", bound - 1)))
        } else if !extremal.avoids(t.entries()) {
            Err(fail(
                "cockayne-lorimer",
                "extremal colouring reaches a target",
            ))
        } else {
            Ok(())
        };
        report.record(outcome, || format!("t = {t}"));
    }
    Ok(report)
}

fn sharp_suite() -> SuiteReport {
    let mut report = SuiteReport::new("sharp", vec!["s-connector", "order", "below targets"], 0);
    for q in 1..=2 {
        for t in targets_with_entries_at_most(q, 3) {
            for s in 1..=4 {
                let outcome = (|| {
                    let (g, cg) = sharp_construction(&t, s)?;
                    if g.n() != t.tmax() + t.lambda() + s - 1 {
                        return Err(fail("sharpness", format!("order {}", g.n())));
                    }
                    if !is_s_connector(&g, s)?.verdict {
                        return Err(fail("sharpness", "not an s-connector"));
                    }
                    if !cg.avoids(t.entries()) {
                        return Err(fail("sharpness", "a colour reaches its target"));
                    }
                    Ok(())
                })();
                report.record(outcome, || format!("t = {t}, s = {s}"));
            }
        }
    }
    report
}

fn discussion_suite() -> SuiteReport {
    use num_rational::Ratio;
    let mut report = SuiteReport::new("discussion", vec!["rho values", "odd cycles arrow"], 0);
    let one = Ratio::from_integer(1);
    for (name, g, expected) in [
        ("K3", Graph::complete(3), one),
        ("P4", Graph::path(4), one),
        ("C6", Graph::cycle(6).expect("n >= 3"), one),
        ("C5", Graph::cycle(5).expect("n >= 3"), Ratio::new(3, 2)),
    ] {
        let outcome = rho(&g, 2).and_then(|r| {
            report.details.push(json!({
                "graph": name,
                "rho": r.value.to_string(),
                "achieving_t": r.achieving_t.entries(),
            }));
            if r.value == expected {
                Ok(())
            } else {
                Err(fail("rho", format!("got {}, expected {expected}", r.value)))
            }
        });
        report.record(outcome, || format!("rho({name}, 2)"));
    }
    for (len, t) in [(5, "2,2"), (7, "2,3"), (9, "3,3")] {
        let t: TVector = t.parse().expect("literal target");
        let outcome = Graph::cycle(len)
            .and_then(|g| arrows(&g, &t))
            .and_then(|v| {
                report.details.push(
                    json!({ "graph": format!("C{len}"), "t": t.entries(), "arrows": v.arrows }),
                );
                if v.arrows {
                    Ok(())
                } else {
                    Err(fail("odd cycle", "a refuting colouring exists"))
                }
            });
        report.record(outcome, || format!("C{len} -> ({t})K2"));
    }
    report
}

fn theorem_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let t = cfg.t.clone().unwrap_or(TVector::uniform(cfg.q, 1)?);
    let mut report = SuiteReport::new(
        "theorem",
        vec!["monochromatic matching certified"],
        cfg.seed,
    );
    let r = verify_theorem_main(&t, cfg.s, cfg.trials, cfg.seed)?;
    report.instances = r.trials;
    for w in r.witnesses.iter().filter(|_| !r.verdict) {
        report.failures.push(w.to_string());
    }
    if !r.verdict && report.failures.is_empty() {
        report.failures.push("verdict false".into());
    }
    Ok(report)
}
