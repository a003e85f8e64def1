use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::candidate::{CanonicalKey, WalkCandidate};
use crate::code::BaseCode;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkMode {
    /// Node-distinct cycles only.
    #[default]
    Simple,
    /// All tailless backtrackless closed walks.
    Tbc,
}

/// Deduplicated candidates sorted by canonical key, with an edge index.
#[derive(Debug, Clone, Default)]
pub struct CandidateSet {
    candidates: Vec<WalkCandidate>,
    by_edge: BTreeMap<(usize, usize), Vec<usize>>,
}

impl CandidateSet {
    pub fn from_candidates(candidates: impl IntoIterator<Item = WalkCandidate>) -> Self {
        let mut map: BTreeMap<CanonicalKey, WalkCandidate> = BTreeMap::new();
        for c in candidates {
            map.entry(c.key().clone()).or_insert(c);
        }
        let candidates: Vec<WalkCandidate> = map.into_values().collect();
        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (idx, c) in candidates.iter().enumerate() {
            for e in c.edges() {
                by_edge.entry(e).or_default().push(idx);
            }
        }
        CandidateSet { candidates, by_edge }
    }

    pub fn union(&self, other: &CandidateSet) -> CandidateSet {
        Self::from_candidates(self.candidates.iter().chain(&other.candidates).cloned())
    }

    /// Keeps candidates for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&WalkCandidate) -> bool) -> CandidateSet {
        Self::from_candidates(self.candidates.iter().filter(|c| keep(c)).cloned())
    }

    pub fn candidates(&self) -> &[WalkCandidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn get(&self, idx: usize) -> &WalkCandidate {
        &self.candidates[idx]
    }

    /// Candidate indices through base edge `(row, col)`.
    pub fn through_edge(&self, row: usize, col: usize) -> &[usize] {
        self.by_edge.get(&(row, col)).map_or(&[], Vec::as_slice)
    }

    pub fn by_edge(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.by_edge
    }

    /// Splits off the unavoidable candidates (all net coefficients zero).
    pub fn partition_avoidable(&self) -> (CandidateSet, CandidateSet) {
        (self.filter(WalkCandidate::avoidable), self.filter(|c| !c.avoidable()))
    }
}

/// Lists every closed walk of length `two_g` in the base graph, up to rotation
/// and reflection.
pub fn enumerate_cycles(base: &BaseCode, two_g: usize, mode: WalkMode) -> Result<CandidateSet> {
    if two_g < 4 || !two_g.is_multiple_of(2) {
        return Err(Error::InvalidCycleLength(two_g));
    }
    let g = two_g / 2;
    let mut found = Vec::new();
    let mut steps = Vec::with_capacity(g);
    for j1 in 0..base.kappa() {
        extend(base, g, mode, j1, &mut steps, &mut found);
    }
    Ok(CandidateSet::from_candidates(found))
}

// Every walk has a rotation starting at its smallest column, so the search
// only visits columns >= the start column.
fn extend(
    base: &BaseCode,
    g: usize,
    mode: WalkMode,
    j: usize,
    steps: &mut Vec<(usize, usize)>,
    out: &mut Vec<WalkCandidate>,
) {
    let j1 = steps.first().map_or(j, |s| s.0);
    for i in 0..base.gamma() {
        if !base.has_edge(i, j) {
            continue;
        }
        if let Some(&(_, prev_i)) = steps.last() {
            if prev_i == i {
                continue;
            }
        }
        if mode == WalkMode::Simple && steps.iter().any(|s| s.1 == i) {
            continue;
        }
        steps.push((j, i));
        if steps.len() == g {
            // close back to j1 through edge (i, j1)
            if j != j1 && base.has_edge(i, j1) && steps[0].1 != i {
                if let Ok(c) = WalkCandidate::new(steps) {
                    out.push(c);
                }
            }
        } else {
            for j_next in j1..base.kappa() {
                if j_next == j || !base.has_edge(i, j_next) {
                    continue;
                }
                if mode == WalkMode::Simple && steps.iter().any(|s| s.0 == j_next) {
                    continue;
                }
                extend(base, g, mode, j_next, steps, out);
            }
        }
        steps.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_counts() {
        let b = BaseCode::all_ones(3, 7).unwrap();
        assert_eq!(enumerate_cycles(&b, 4, WalkMode::Simple).unwrap().len(), 63);
        let b = BaseCode::all_ones(2, 2).unwrap();
        assert_eq!(enumerate_cycles(&b, 4, WalkMode::Simple).unwrap().len(), 1);
    }

    #[test]
    fn modes_agree_on_four_cycles() {
        let b = BaseCode::all_ones(4, 5).unwrap();
        let s = enumerate_cycles(&b, 4, WalkMode::Simple).unwrap();
        let t = enumerate_cycles(&b, 4, WalkMode::Tbc).unwrap();
        let ks: Vec<_> = s.candidates().iter().map(|c| c.key().clone()).collect();
        let kt: Vec<_> = t.candidates().iter().map(|c| c.key().clone()).collect();
        assert_eq!(ks, kt);
    }

    #[test]
    fn tbc_eight_includes_non_simple() {
        let b = BaseCode::all_ones(2, 2).unwrap();
        let t = enumerate_cycles(&b, 8, WalkMode::Tbc).unwrap();
        assert!(t.candidates().iter().any(|c| !c.is_simple()));
        assert!(enumerate_cycles(&b, 8, WalkMode::Simple).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_length() {
        let b = BaseCode::all_ones(2, 2).unwrap();
        assert_eq!(
            enumerate_cycles(&b, 5, WalkMode::Simple).unwrap_err(),
            Error::InvalidCycleLength(5)
        );
        assert!(enumerate_cycles(&b, 2, WalkMode::Simple).is_err());
    }

    #[test]
    fn respects_mask() {
        let b = BaseCode::from_mask(vec![
            vec![true, true, false],
            vec![true, true, true],
            vec![false, true, true],
        ])
        .unwrap();
        let s = enumerate_cycles(&b, 4, WalkMode::Simple).unwrap();
        assert_eq!(s.len(), 2);
        for c in s.candidates() {
            assert!(c.edges().all(|(i, j)| b.has_edge(i, j)));
        }
    }

    #[test]
    fn by_edge_inverts_membership() {
        let b = BaseCode::all_ones(3, 4).unwrap();
        let s = enumerate_cycles(&b, 6, WalkMode::Simple).unwrap();
        for (idx, c) in s.candidates().iter().enumerate() {
            for (i, j) in c.edges() {
                assert!(s.through_edge(i, j).contains(&idx));
            }
        }
        for (&(i, j), list) in s.by_edge() {
            for &idx in list {
                assert!(s.get(idx).coeffs().contains_key(&(i, j)));
            }
        }
    }
}
