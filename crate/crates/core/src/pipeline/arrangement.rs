use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::layout::{PairIndex, VertexLayout};
use crate::homology::{homology_summary, SimplexKey, SimplicialComplex};
use crate::{Error, Result};

/// Colorings beyond this count are not surveyed.
pub const SURVEY_LIMIT: u64 = 1_000_000;

/// An assignment of a voter to every pair of alternatives, in lexicographic
/// pair order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub n: usize,
    #[serde(rename = "N")]
    pub voters: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(n: usize, voters: usize, colors: Vec<usize>) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        if colors.len() != pairs {
            return Err(Error::Precondition(format!("{} colors for {pairs} pairs", colors.len())));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= voters) {
            return Err(Error::Precondition(format!("color {c} out of range for N = {voters}")));
        }
        Ok(Self { n, voters, colors })
    }

    pub fn constant(n: usize, voters: usize, k: usize) -> Result<Self> {
        Self::new(n, voters, vec![k; n * n.saturating_sub(1) / 2])
    }

    /// The `code`-th coloring, reading `colors` as base-`N` digits with the
    /// first pair most significant.
    pub fn from_code(n: usize, voters: usize, mut code: u64) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        let mut colors = vec![0; pairs];
        for slot in colors.iter_mut().rev() {
            *slot = (code % voters as u64) as usize;
            code /= voters as u64;
        }
        Self::new(n, voters, colors)
    }

    pub fn is_constant(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    /// Edges of the graph `Γ_k`.
    pub fn edges_of(&self, k: usize, pairs: &[PairIndex]) -> Vec<PairIndex> {
        pairs.iter().zip(&self.colors).filter(|(_, &c)| c == k).map(|(p, _)| *p).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringDimension {
    pub coloring: Vec<usize>,
    /// Components of each `Γ_k`, by union-find.
    pub components: Vec<usize>,
    pub edges: Vec<usize>,
    /// Rank of `H_1(Γ_k)` from the homology engine.
    pub h1: Vec<usize>,
    /// `Σ_k (components_k - 1)`.
    pub by_components: i64,
    /// `(n - 1) N - C(n, 2) + Σ_k h1_k`.
    pub by_formula: i64,
}

impl ColoringDimension {
    pub fn agrees(&self) -> bool {
        self.by_components == self.by_formula
    }
}

/// Dimension of the subspace `R^λ`, computed from connected components and
/// independently from first Betti numbers of the color graphs.
pub fn coloring_dimension(lambda: &Coloring) -> Result<ColoringDimension> {
    let (n, voters) = (lambda.n, lambda.voters);
    let layout = VertexLayout::new(n, voters)?;
    let mut components = Vec::with_capacity(voters);
    let mut edges = Vec::with_capacity(voters);
    let mut h1 = Vec::with_capacity(voters);
    for k in 0..voters {
        let es = lambda.edges_of(k, layout.pairs());
        let mut uf = UnionFind::<usize>::new(n);
        for e in &es {
            uf.union(e.i, e.j);
        }
        let mut labels = uf.into_labeling();
        labels.sort_unstable();
        labels.dedup();
        let c = labels.len();

        let graph = graph_complex(n, &es)?;
        let summary = homology_summary(&graph)?;
        let betti1 = summary.get(1).map_or(0, |g| g.betti);
        let betti0 = summary[0].betti;
        if betti0 != c || betti1 + n != es.len() + c {
            return Err(Error::Internal(format!(
                "graph {k}: homology gives b0 = {betti0}, b1 = {betti1}; union-find gives {c} components on {} edges",
                es.len()
            )));
        }
        components.push(c);
        edges.push(es.len());
        h1.push(betti1);
    }
    let by_components = components.iter().map(|&c| c as i64 - 1).sum();
    let pairs = (n * (n - 1) / 2) as i64;
    let by_formula = (n as i64 - 1) * voters as i64 - pairs + h1.iter().map(|&h| h as i64).sum::<i64>();
    Ok(ColoringDimension { coloring: lambda.colors.clone(), components, edges, h1, by_components, by_formula })
}

/// The graph as a 1-dimensional complex, isolated vertices included.
fn graph_complex(n: usize, edges: &[PairIndex]) -> Result<SimplicialComplex> {
    let faces: Vec<SimplexKey> = (0..n)
        .map(|v| SimplexKey::new(vec![v]))
        .chain(edges.iter().map(|e| SimplexKey::new(vec![e.i, e.j])))
        .collect::<Result<_>>()?;
    SimplicialComplex::from_maximal_faces(n, &faces)
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementSurvey {
    pub n: usize,
    #[serde(rename = "N")]
    pub voters: usize,
    pub colorings: u64,
    pub disagreements: Vec<ColoringDimension>,
    pub max_dimension: i64,
    pub expected_max: i64,
    /// Colorings attaining the maximum.
    pub maximizers: Vec<Vec<usize>>,
    pub maximizers_are_constant: bool,
    pub passed: bool,
}

/// Runs [`coloring_dimension`] over all `N^C(n,2)` colorings.
pub fn arrangement_survey(n: usize, voters: usize) -> Result<ArrangementSurvey> {
    if n < 2 || voters == 0 {
        return Err(Error::Envelope { n, voters, reason: "need n >= 2 and N >= 1".into() });
    }
    let pairs = (n * (n - 1) / 2) as u32;
    let count = (voters as u64).checked_pow(pairs).filter(|&c| c <= SURVEY_LIMIT).ok_or_else(|| Error::Envelope {
        n,
        voters,
        reason: format!("more than {SURVEY_LIMIT} colorings"),
    })?;
    let mut disagreements = Vec::new();
    let mut max_dimension = i64::MIN;
    let mut maximizers: Vec<Coloring> = Vec::new();
    for code in 0..count {
        let lambda = Coloring::from_code(n, voters, code)?;
        let d = coloring_dimension(&lambda)?;
        if !d.agrees() {
            disagreements.push(d.clone());
        }
        match d.by_components.cmp(&max_dimension) {
            std::cmp::Ordering::Greater => {
                max_dimension = d.by_components;
                maximizers = vec![lambda];
            }
            std::cmp::Ordering::Equal => maximizers.push(lambda),
            std::cmp::Ordering::Less => {}
        }
    }
    let expected_max = (voters as i64 - 1) * (n as i64 - 1);
    let maximizers_are_constant = maximizers.len() == voters && maximizers.iter().all(Coloring::is_constant);
    Ok(ArrangementSurvey {
        n,
        voters,
        colorings: count,
        passed: disagreements.is_empty() && max_dimension == expected_max && maximizers_are_constant,
        disagreements,
        max_dimension,
        expected_max,
        maximizers: maximizers.into_iter().map(|c| c.colors).collect(),
        maximizers_are_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coloring() {
        let d = coloring_dimension(&Coloring::constant(3, 2, 0).unwrap()).unwrap();
        assert_eq!((d.by_components, d.by_formula), (2, 2));
    }

    #[test]
    fn mixed_coloring_three_two() {
        // pairs 01, 02 -> voter 0; pair 12 -> voter 1
        let d = coloring_dimension(&Coloring::new(3, 2, vec![0, 0, 1]).unwrap()).unwrap();
        assert_eq!(d.components, vec![1, 2]);
        assert_eq!((d.by_components, d.by_formula), (1, 1));
    }

    #[test]
    fn survey_four_two() {
        let s = arrangement_survey(4, 2).unwrap();
        assert!(s.passed, "{s:?}");
        assert_eq!(s.max_dimension, 3);
        assert_eq!(s.maximizers.len(), 2);
        assert_eq!(s.colorings, 64);
    }

    #[test]
    fn coloring_codes_enumerate_distinct_colorings() {
        let all: std::collections::HashSet<Vec<usize>> =
            (0..27).map(|c| Coloring::from_code(3, 3, c).unwrap().colors).collect();
        assert_eq!(all.len(), 27);
        assert!(Coloring::new(3, 2, vec![0, 2, 1]).is_err());
    }
}
