use super::Graph;
use crate::error::{Error, Result};

/// A forest with non-negative integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedForest {
    graph: Graph,
    weights: Vec<u64>,
}

impl WeightedForest {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.n()
            )));
        }
        if !graph.is_forest() {
            return Err(Error::InvalidInput("graph contains a cycle".into()));
        }
        Ok(WeightedForest { graph, weights })
    }

    /// Every vertex has weight one.
    pub fn uniform(graph: Graph) -> Result<Self> {
        let n = graph.n();
        Self::new(graph, vec![1; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    fn weight_of(&self, set: &[usize]) -> u64 {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    /// Components of `forest - v`, each with its weight.
    pub fn components_without(&self, v: usize) -> Vec<(Vec<usize>, u64)> {
        let mut active = vec![true; self.graph.n()];
        active[v] = false;
        self.graph
            .components_within(&active)
            .into_iter()
            .map(|c| {
                let w = self.weight_of(&c);
                (c, w)
            })
            .collect()
    }

    /// Every component of `forest - v` weighs at most half the total.
    pub fn is_centroid(&self, v: usize) -> bool {
        let total = self.total_weight();
        self.components_without(v)
            .iter()
            .all(|(_, w)| 2 * w <= total)
    }
}

/// A weighted centroid, found by walking from the heaviest tree towards the
/// heaviest remaining component until no component exceeds half the weight.
pub fn weighted_centroid(forest: &WeightedForest) -> Result<usize> {
    let g = forest.graph();
    if g.n() == 0 {
        return Err(Error::precondition("weighted_centroid", "empty forest"));
    }
    let total = forest.total_weight();
    // Heaviest tree; ties go to the tree with the smallest vertex.
    let tree = g
        .components()
        .into_iter()
        .max_by(|a, b| {
            forest
                .weight_of(a)
                .cmp(&forest.weight_of(b))
                .then(b[0].cmp(&a[0]))
        })
        .expect("non-empty graph has a component");
    let mut v = tree[0];
    // The walk cannot revisit a vertex without backtracking, which forces
    // two disjoint components each heavier than half the total.
    for _ in 0..=g.n() {
        let heaviest = forest
            .components_without(v)
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0[0].cmp(&a.0[0])));
        match heaviest {
            Some((comp, w)) if 2 * w > total => {
                v = *g
                    .neighbors(v)
                    .iter()
                    .find(|u| comp.binary_search(u).is_ok())
                    .ok_or_else(|| {
                        Error::contract(
                            "weighted centroid",
                            "heaviest component lies in another tree",
                        )
                    })?;
            }
            _ => return Ok(v),
        }
    }
    Err(Error::contract(
        "weighted centroid",
        "walk did not terminate",
    ))
}

/// Chooses indices whose values sum into `[Σ/3, 2Σ/3]`. Requires every value
/// positive and at most `2Σ/3`. Takes a single value of at least `Σ/3` if one
/// exists, otherwise the shortest prefix reaching `Σ/3`.
pub fn balanced_subset(values: &[u64]) -> Result<Vec<usize>> {
    let total: u64 = values.iter().sum();
    if let Some(i) = values.iter().position(|&x| x == 0) {
        return Err(Error::precondition(
            "balanced_subset",
            format!("value at index {i} is not positive"),
        ));
    }
    if let Some(i) = values.iter().position(|&x| 3 * x > 2 * total) {
        return Err(Error::precondition(
            "balanced_subset",
            format!(
                "value {} at index {i} exceeds 2/3 of the sum {total}",
                values[i]
            ),
        ));
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    if let Some(i) = values.iter().position(|&x| 3 * x >= total) {
        return Ok(vec![i]);
    }
    let mut acc = 0;
    for (i, &x) in values.iter().enumerate() {
        acc += x;
        if 3 * acc >= total {
            return Ok((0..=i).collect());
        }
    }
    unreachable!("the full prefix reaches the total")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroid_examples() {
        let single = WeightedForest::new(Graph::new(1), vec![5]).unwrap();
        assert_eq!(weighted_centroid(&single).unwrap(), 0);

        let p3 = WeightedForest::uniform(Graph::path(3)).unwrap();
        assert_eq!(weighted_centroid(&p3).unwrap(), 1);

        let star = WeightedForest::uniform(Graph::complete_bipartite(1, 4)).unwrap();
        assert_eq!(weighted_centroid(&star).unwrap(), 0);
        // Only the centre qualifies.
        assert_eq!(
            (0..5).filter(|&v| star.is_centroid(v)).collect::<Vec<_>>(),
            vec![0]
        );
    }

    #[test]
    fn centroid_of_forest_with_zero_weights() {
        // Path 0-1-2-3-4 weighted only at the far end, plus an isolated vertex.
        let g = Graph::path(5).with_isolated(1);
        let f = WeightedForest::new(g, vec![0, 0, 0, 1, 1, 0]).unwrap();
        let c = weighted_centroid(&f).unwrap();
        assert!(f.is_centroid(c));
    }

    #[test]
    fn centroid_errors() {
        let empty = WeightedForest::uniform(Graph::new(0)).unwrap();
        assert!(weighted_centroid(&empty).is_err());
        assert!(WeightedForest::uniform(Graph::cycle(3).unwrap()).is_err());
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced_subset(&[1, 1, 1]).unwrap(), vec![0]);
        assert_eq!(balanced_subset(&[2, 1, 1, 1, 1]).unwrap(), vec![0]);
        assert_eq!(balanced_subset(&[1, 1]).unwrap(), vec![0]);
        assert_eq!(
            balanced_subset(&[1, 1, 1, 1, 1, 1, 1]).unwrap(),
            vec![0, 1, 2]
        );
        assert!(balanced_subset(&[5, 1]).is_err());
        assert!(balanced_subset(&[0, 1]).is_err());
    }
}
