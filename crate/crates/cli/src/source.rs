//! Graph sources accepted by `--graph`: built-in literals, seeded generator
//! specs, and files.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use matchram::connector::{
    gen_complete_split, gen_gnp, gen_odd_cycle, gen_random_regular, gen_s_connector,
};
use matchram::Graph;

/// Literals: `K<n>`, `K<a>,<b>`, `C<n>`, `P<n>`, `E<n>` (edgeless), `Petersen`.
/// Generators: `gnp:<n>:<p>`, `regular:<n>:<d>`, `split:<clique>:<independent>`,
/// `connector:<n>:<s>`, `odd-cycle:<len>`. Anything else is read as a file,
/// JSON if it ends in `.json`, edge-list text otherwise.
pub fn parse_graph(spec: &str, seed: u64) -> Result<Graph> {
    if let Some(g) = literal(spec)? {
        return Ok(g);
    }
    if let Some((kind, rest)) = spec.split_once(':') {
        let args: Vec<&str> = rest.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| anyhow!("generator {kind:?} needs more arguments"))?
                .parse()
                .with_context(|| format!("bad argument in {spec:?}"))
        };
        let g = match kind {
            "gnp" => {
                let p: f64 = args
                    .get(1)
                    .ok_or_else(|| anyhow!("gnp needs n and p"))?
                    .parse()
                    .with_context(|| format!("bad probability in {spec:?}"))?;
                gen_gnp(num(0)?, p, seed)?
            }
            "regular" => gen_random_regular(num(0)?, num(1)?, seed)?,
            "split" => gen_complete_split(num(0)?, num(1)?),
            "connector" => gen_s_connector(num(0)?, num(1)?, seed)?,
            "odd-cycle" => gen_odd_cycle(num(0)?)?,
            _ => bail!("unknown generator {kind:?}"),
        };
        return Ok(g);
    }
    read_graph_file(Path::new(spec))
}

/// True when the spec draws on the seed.
pub fn is_random(spec: &str) -> bool {
    ["gnp:", "regular:", "connector:"]
        .iter()
        .any(|p| spec.starts_with(p))
}

fn literal(spec: &str) -> Result<Option<Graph>> {
    if spec.eq_ignore_ascii_case("petersen") {
        return Ok(Some(Graph::petersen()));
    }
    let mut chars = spec.chars();
    let Some(head) = chars.next() else {
        bail!("empty graph spec");
    };
    let body = chars.as_str();
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == ',') {
        return Ok(None);
    }
    let nums: Vec<usize> = body
        .split(',')
        .map(|x| x.parse().with_context(|| format!("bad size in {spec:?}")))
        .collect::<Result<_>>()?;
    let g = match (head, nums.as_slice()) {
        ('K', [n]) => Graph::complete(*n),
        ('K', [a, b]) => Graph::complete_bipartite(*a, *b),
        ('C', [n]) => Graph::cycle(*n)?,
        ('P', [n]) => Graph::path(*n),
        ('E', [n]) => Graph::new(*n),
        _ => return Ok(None),
    };
    Ok(Some(g))
}

fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read graph {}", path.display()))?;
    let g = if path.extension().is_some_and(|e| e == "json") {
        Graph::from_json(&text)?
    } else {
        Graph::from_edge_list(&text)?
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_graph("K5", 0).unwrap().m(), 10);
        assert_eq!(parse_graph("K3,3", 0).unwrap().m(), 9);
        assert_eq!(parse_graph("C7", 0).unwrap().m(), 7);
        assert_eq!(parse_graph("P4", 0).unwrap().m(), 3);
        assert_eq!(parse_graph("Petersen", 0).unwrap().m(), 15);
        assert!(parse_graph("C2", 0).is_err());
    }

    #[test]
    fn generators_are_seeded() {
        let a = parse_graph("gnp:12:0.5", 4).unwrap();
        assert_eq!(a, parse_graph("gnp:12:0.5", 4).unwrap());
        assert_eq!(parse_graph("regular:10:3", 1).unwrap().m(), 15);
        assert!(is_random("connector:10:2"));
        assert!(!is_random("K5"));
        assert!(parse_graph("bogus:1", 0).is_err());
    }
}
