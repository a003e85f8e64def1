use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A node of the base graph. Columns order before rows so that canonical
/// keys always start at a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Col(usize),
    Row(usize),
}

/// Rotation/reflection-minimal encoding of a closed alternating walk.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<Node>);

impl CanonicalKey {
    pub fn nodes(&self) -> &[Node] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|n| match n {
                Node::Col(j) => format!("c{j}"),
                Node::Row(i) => format!("r{i}"),
            })
            .collect();
        f.write_str(&parts.join("-"))
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Smallest sequence over every rotation of `seq` and of its reversal.
pub fn canonical_key(seq: &[Node]) -> CanonicalKey {
    let n = seq.len();
    let reversed: Vec<Node> = seq.iter().rev().copied().collect();
    let mut best: Option<Vec<Node>> = None;
    for s in [seq, &reversed[..]] {
        for t in 0..n {
            let rot: Vec<Node> = s[t..].iter().chain(&s[..t]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    CanonicalKey(best.unwrap_or_default())
}

/// A closed tailless backtrackless walk `(j_1, i_1, ..., j_g, i_g)` in the
/// base graph together with its per-edge net coefficients.
///
/// Edge `(i_k, j_k)` counts `+1` and `(i_k, j_{k+1})` counts `-1`, with
/// `j_{g+1} = j_1`. Every traversed edge appears in `coeffs`, possibly with a
/// zero net value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCandidate {
    steps: Vec<(usize, usize)>,
    coeffs: BTreeMap<(usize, usize), i64>,
    key: CanonicalKey,
}

impl WalkCandidate {
    /// `steps[k] = (j_k, i_k)`. The walk is stored in canonical orientation.
    pub fn new(steps: &[(usize, usize)]) -> Result<Self> {
        let g = steps.len();
        if g < 2 {
            return Err(Error::InvalidCycleLength(2 * g));
        }
        for k in 0..g {
            let (j, i) = steps[k];
            let (j_next, i_next) = steps[(k + 1) % g];
            if j_next == j {
                return Err(Error::InvalidParameter(format!("walk backtracks at row {i}")));
            }
            if i_next == i {
                return Err(Error::InvalidParameter(format!("walk backtracks at column {j_next}")));
            }
        }
        let seq: Vec<Node> = steps.iter().flat_map(|&(j, i)| [Node::Col(j), Node::Row(i)]).collect();
        let key = canonical_key(&seq);
        let canon: Vec<(usize, usize)> = key
            .0
            .chunks(2)
            .map(|p| match (p[0], p[1]) {
                (Node::Col(j), Node::Row(i)) => (j, i),
                _ => unreachable!("canonical key starts at a column"),
            })
            .collect();
        let mut coeffs = BTreeMap::new();
        for k in 0..g {
            let (j, i) = canon[k];
            let j_next = canon[(k + 1) % g].0;
            *coeffs.entry((i, j)).or_insert(0) += 1;
            *coeffs.entry((i, j_next)).or_insert(0) -= 1;
        }
        Ok(WalkCandidate {
            steps: canon,
            coeffs,
            key,
        })
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    /// Flat node list `j_1, i_1, j_2, i_2, ...`.
    pub fn flat_nodes(&self) -> Vec<usize> {
        self.steps.iter().flat_map(|&(j, i)| [j, i]).collect()
    }

    pub fn half_length(&self) -> usize {
        self.steps.len()
    }

    pub fn length(&self) -> usize {
        2 * self.steps.len()
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.coeffs
    }

    /// Traversed base edges `(row, col)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn key(&self) -> &CanonicalKey {
        &self.key
    }

    pub fn avoidable(&self) -> bool {
        self.coeffs.values().any(|&c| c != 0)
    }

    /// Node-distinct cycle.
    pub fn is_simple(&self) -> bool {
        let g = self.steps.len();
        let mut cols: Vec<usize> = self.steps.iter().map(|s| s.0).collect();
        let mut rows: Vec<usize> = self.steps.iter().map(|s| s.1).collect();
        cols.sort_unstable();
        cols.dedup();
        rows.sort_unstable();
        rows.dedup();
        cols.len() == g && rows.len() == g
    }
}

/// A harmful structure described by its fundamental cycles.
#[derive(Debug, Clone)]
pub struct HarmfulStructure {
    cycles: Vec<WalkCandidate>,
    label: String,
}

impl HarmfulStructure {
    pub fn new(cycles: Vec<WalkCandidate>, label: impl Into<String>) -> Result<Self> {
        if cycles.is_empty() {
            return Err(Error::InvalidParameter(
                "a harmful structure needs at least one fundamental cycle".into(),
            ));
        }
        Ok(HarmfulStructure {
            cycles,
            label: label.into(),
        })
    }

    pub fn single(cycle: WalkCandidate) -> Self {
        let label = format!("cycle-{}", cycle.length());
        HarmfulStructure {
            cycles: vec![cycle],
            label,
        }
    }

    pub fn cycles(&self) -> &[WalkCandidate] {
        &self.cycles
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}
