//! Cycle candidates in the base graph, their activation conditions, and
//! independent graph verifiers.

mod absorbing;
mod activation;
mod analysis;
mod candidate;
mod enumerate;
mod girth;

pub use absorbing::{classify_absorbing_set, AbsorbingClass};
pub use activation::{is_active_lift, is_active_partition};
pub use analysis::{c4_delta_formula, dependency_degree, harmful_weight, DependencyGraph, HarmfulWeights};
pub use candidate::{canonical_key, CanonicalKey, HarmfulStructure, Node, WalkCandidate};
pub use enumerate::{enumerate_cycles, CandidateSet, WalkMode};
pub use girth::girth;

use serde::Serialize;

#[derive(Serialize)]
struct CandidateLine<'a> {
    key: &'a CanonicalKey,
    nodes: Vec<usize>,
    coeffs: Vec<(usize, usize, i64)>,
    avoidable: bool,
}

/// One JSON object per line: `{key, nodes, coeffs, avoidable}` with
/// `coeffs` as `[row, col, coefficient]` triples.
pub fn candidates_to_jsonl(set: &CandidateSet) -> String {
    let mut out = String::new();
    for c in set.candidates() {
        let line = CandidateLine {
            key: c.key(),
            nodes: c.flat_nodes(),
            coeffs: c.coeffs().iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
            avoidable: c.avoidable(),
        };
        out.push_str(&serde_json::to_string(&line).expect("candidate serializes"));
        out.push('\n');
    }
    out
}
