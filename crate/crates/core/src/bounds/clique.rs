use serde::Serialize;

use crate::error::{Error, Result};
use crate::walks::{CandidateSet, DependencyGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    /// Every dependency edge is its own 2-clique.
    Pairwise,
    /// One clique per base edge: all candidates through it.
    BaseEdge,
}

/// A set of cliques covering every edge of the dependency graph, with one
/// `x` value per (candidate, clique) membership.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueCover {
    pub kind: CoverKind,
    pub cliques: Vec<Vec<usize>>,
    /// `x_values[v][t]` belongs to candidate `cliques[v][t]`.
    pub x_values: Vec<Vec<f64>>,
}

impl CliqueCover {
    pub fn pairwise(dep: &DependencyGraph, x: f64) -> Self {
        let mut cliques = Vec::new();
        for (a, nb) in dep.neighbors.iter().enumerate() {
            for &b in nb.iter().filter(|&&b| b > a) {
                cliques.push(vec![a, b]);
            }
        }
        let x_values = cliques.iter().map(|c| vec![x; c.len()]).collect();
        CliqueCover {
            kind: CoverKind::Pairwise,
            cliques,
            x_values,
        }
    }

    pub fn base_edge(set: &CandidateSet, x: f64) -> Self {
        let cliques: Vec<Vec<usize>> = set.by_edge().values().filter(|c| !c.is_empty()).cloned().collect();
        let x_values = cliques.iter().map(|c| vec![x; c.len()]).collect();
        CliqueCover {
            kind: CoverKind::BaseEdge,
            cliques,
            x_values,
        }
    }

    /// Every dependency edge lies inside some clique.
    pub fn covers(&self, dep: &DependencyGraph) -> bool {
        let mut covered = std::collections::BTreeSet::new();
        for c in &self.cliques {
            for (s, &a) in c.iter().enumerate() {
                for &b in &c[s + 1..] {
                    covered.insert((a.min(b), a.max(b)));
                }
            }
        }
        dep.neighbors
            .iter()
            .enumerate()
            .all(|(a, nb)| nb.iter().all(|&b| covered.contains(&(a.min(b), a.max(b)))))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueLllOutcome {
    /// `sum_{i in K_v} x_{i,v} < 1` for every clique.
    pub clique_sums_ok: bool,
    /// Every event probability meets its per-clique requirement.
    pub event_conditions_ok: bool,
    /// `prod_v (1 - sum_{i in K_v} x_{i,v})`
    pub avoidance_lower_bound: f64,
    /// `sum_i min_v x_{i,v} / (1 - sum_{j in K_v} x_{j,v})`
    pub resample_bound: f64,
}

/// Evaluates both clique-LLL conditions and, when they hold, its two
/// conclusions for the given cover and event probabilities.
pub fn clique_lll_evaluate(cover: &CliqueCover, probs: &[f64]) -> Result<CliqueLllOutcome> {
    let n = probs.len();
    let sums: Vec<f64> = cover.x_values.iter().map(|xs| xs.iter().sum()).collect();
    // memberships[i] = [(clique, position)]
    let mut memberships: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (v, c) in cover.cliques.iter().enumerate() {
        for (t, &i) in c.iter().enumerate() {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, limit: n });
            }
            memberships[i].push((v, t));
        }
    }
    let clique_sums_ok = sums.iter().all(|&s| s < 1.0);
    let mut event_conditions_ok = true;
    let mut resample_bound = 0.0;
    for (i, member) in memberships.iter().enumerate() {
        let mut best = f64::INFINITY;
        for &(v, t) in member {
            let x = cover.x_values[v][t];
            let others: f64 = member
                .iter()
                .filter(|&&(u, _)| u != v)
                .map(|&(u, s)| 1.0 - (sums[u] - cover.x_values[u][s]))
                .product();
            if probs[i] > x * others {
                event_conditions_ok = false;
            }
            best = best.min(x / (1.0 - sums[v]));
        }
        if member.is_empty() {
            // isolated event: only needs p < 1, resampled at most p/(1-p) times
            event_conditions_ok &= probs[i] < 1.0;
            best = probs[i] / (1.0 - probs[i]);
        }
        resample_bound += best;
    }
    let avoidance_lower_bound = sums.iter().map(|s| 1.0 - s).product();
    Ok(CliqueLllOutcome {
        clique_sums_ok,
        event_conditions_ok,
        avoidance_lower_bound,
        resample_bound,
    })
}
