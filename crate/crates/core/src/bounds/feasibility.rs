use num_traits::Zero;
use serde::Serialize;

use super::resample::theorem2_resample_bound;
use super::thresholds::{theorem1_thresholds, Branch, Thresholds};
use crate::code::BaseCode;
use crate::error::{Error, Result};
use crate::probability::ActivationProbability;
use crate::rational::{self, Rational};
use crate::walks::{c4_delta_formula, dependency_degree, harmful_weight, CandidateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaSource {
    /// `(2 gamma - 3)(2 kappa - 3)`, defined for the full 4-cycle set of an
    /// all-ones base.
    #[default]
    #[serde(rename = "paper-formula", alias = "closed-form")]
    ClosedForm,
    /// Maximum degree of the enumerated dependency graph.
    Observed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub delta: u64,
    pub delta_source: DeltaSource,
    pub delta_observed: u64,
    pub delta_formula: Option<u64>,
    pub dependency_edges: u64,
    pub h_size: u64,
    pub w: u64,
    pub thresholds: Thresholds,
    pub threshold: f64,
    pub branch: Branch,
    #[serde(serialize_with = "rational::ser_str")]
    pub p_max: Rational,
    pub p_max_f64: f64,
    pub feasible: bool,
    /// `None` when the clique-LLL witness is invalid (`Delta <= 2` with
    /// dependent events on branch I).
    pub avoidance_lower_bound: Option<f64>,
    #[serde(serialize_with = "rational::ser_opt_str")]
    pub resample_bound: Option<Rational>,
}

/// `true` when `set` is exactly the 4-cycle set of an all-ones base.
pub fn is_full_c4_set(base: &BaseCode, set: &CandidateSet) -> bool {
    let (g, k) = (base.gamma(), base.kappa());
    base.is_all_ones()
        && g >= 2
        && k >= 2
        && set.len() == g * (g - 1) / 2 * (k * (k - 1) / 2)
        && set.candidates().iter().all(|c| c.length() == 4 && c.is_simple())
}

fn node_count(c: &crate::walks::WalkCandidate) -> u64 {
    let mut cols: Vec<usize> = c.steps().iter().map(|s| s.0).collect();
    let mut rows: Vec<usize> = c.steps().iter().map(|s| s.1).collect();
    cols.sort_unstable();
    cols.dedup();
    rows.sort_unstable();
    rows.dedup();
    (cols.len() + rows.len()) as u64
}

/// Checks the clique-LLL sufficient condition for avoiding every candidate in
/// `set` given per-candidate activation probabilities.
pub fn theorem1_feasibility(
    base: &BaseCode,
    set: &CandidateSet,
    probs: &[ActivationProbability],
    delta_source: DeltaSource,
) -> Result<BoundReport> {
    if probs.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} candidates but {} probabilities",
            set.len(),
            probs.len()
        )));
    }
    if let Some(c) = set.candidates().iter().find(|c| !c.avoidable()) {
        return Err(Error::UnavoidableEvent(c.key().to_string()));
    }
    let dep = dependency_degree(set);
    let weights = harmful_weight(base, set);
    let delta_observed = dep.max_degree as u64;
    let delta_formula = is_full_c4_set(base, set).then(|| c4_delta_formula(base.gamma(), base.kappa()) as u64);
    let delta = match delta_source {
        DeltaSource::Observed => delta_observed,
        DeltaSource::ClosedForm => delta_formula.ok_or_else(|| {
            Error::NotApplicable("the closed-form Delta covers only the full 4-cycle set of an all-ones base".into())
        })?,
    };
    let h_size = set.candidates().iter().map(node_count).max().unwrap_or(4).max(2);
    let w = weights.max as u64;
    let thresholds = theorem1_thresholds(delta, h_size, w)?;
    let p_max = probs
        .iter()
        .map(|p| p.joint.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let feasible = thresholds.admits(&p_max);
    let branch = thresholds.branch;
    let edges = dep.edge_count as u64;
    let avoidance_lower_bound = match branch {
        Branch::I if edges == 0 => Some(1.0),
        Branch::I if delta >= 3 => Some((edges as f64 * (-2.0 / delta as f64).ln_1p()).exp()),
        Branch::I => None,
        Branch::II => {
            let frac = w as f64 / ((w - 1) as f64 * h_size as f64);
            Some(((base.edge_count()) as f64 * (-frac).ln_1p()).exp())
        }
    };
    let resample_bound = if set.is_empty() {
        Some(Rational::zero())
    } else {
        theorem2_resample_bound(set.len() as u64, delta, w, h_size, branch).ok()
    };
    Ok(BoundReport {
        k: set.len(),
        delta,
        delta_source,
        delta_observed,
        delta_formula,
        dependency_edges: edges,
        h_size,
        w,
        threshold: thresholds.best().value,
        thresholds,
        branch,
        p_max_f64: rational::to_f64(&p_max),
        p_max,
        feasible,
        avoidance_lower_bound,
        resample_bound,
    })
}
