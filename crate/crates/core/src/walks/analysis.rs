use std::collections::BTreeMap;

use super::enumerate::CandidateSet;
use crate::code::BaseCode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmfulWeights {
    /// Number of candidates through each masked base edge.
    pub per_edge: BTreeMap<(usize, usize), usize>,
    pub max: usize,
}

pub fn harmful_weight(base: &BaseCode, set: &CandidateSet) -> HarmfulWeights {
    let per_edge: BTreeMap<(usize, usize), usize> = base
        .edges()
        .into_iter()
        .map(|(i, j)| ((i, j), set.through_edge(i, j).len()))
        .collect();
    let max = per_edge.values().copied().max().unwrap_or(0);
    HarmfulWeights { per_edge, max }
}

/// Events joined when they share a base edge (a random variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    /// Sorted neighbor lists, self excluded.
    pub neighbors: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub edge_count: usize,
}

pub fn dependency_degree(set: &CandidateSet) -> DependencyGraph {
    let mut neighbors = Vec::with_capacity(set.len());
    for (idx, c) in set.candidates().iter().enumerate() {
        let mut nb: Vec<usize> = c
            .edges()
            .flat_map(|(i, j)| set.through_edge(i, j).iter().copied())
            .filter(|&o| o != idx)
            .collect();
        nb.sort_unstable();
        nb.dedup();
        neighbors.push(nb);
    }
    let degrees: Vec<usize> = neighbors.iter().map(Vec::len).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let edge_count = degrees.iter().sum::<usize>() / 2;
    DependencyGraph {
        neighbors,
        degrees,
        max_degree,
        edge_count,
    }
}

/// Closed form for the C4 dependency degree on an all-ones base,
/// `(2 gamma - 3)(2 kappa - 3)`.
pub fn c4_delta_formula(gamma: usize, kappa: usize) -> usize {
    (2 * gamma).saturating_sub(3) * (2 * kappa).saturating_sub(3)
}
