use serde::{Deserialize, Serialize};

use super::base::BaseCode;
use super::scheme::CouplingScheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Partition,
    Lift,
}

/// Values on the masked edges of a base code: pattern entries for the
/// partition matrix or circulant shifts for the lifting matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    stage: Stage,
    grid: Vec<Vec<Option<i64>>>,
}

impl Assignment {
    /// Builds from a dense grid; entries at non-edges are ignored.
    pub fn from_dense(stage: Stage, base: &BaseCode, dense: &[Vec<i64>]) -> Result<Self> {
        if dense.len() != base.gamma() || dense.iter().any(|r| r.len() != base.kappa()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} values",
                base.gamma(),
                base.kappa()
            )));
        }
        let grid = (0..base.gamma())
            .map(|i| {
                (0..base.kappa())
                    .map(|j| base.has_edge(i, j).then_some(dense[i][j]))
                    .collect()
            })
            .collect();
        Ok(Assignment { stage, grid })
    }

    /// Builds from values listed in the base's row-major edge order.
    pub fn from_edge_values(stage: Stage, base: &BaseCode, values: &[i64]) -> Result<Self> {
        let edges = base.edges();
        if edges.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} edges but {} values",
                edges.len(),
                values.len()
            )));
        }
        let mut grid = vec![vec![None; base.kappa()]; base.gamma()];
        for (&(i, j), &v) in edges.iter().zip(values) {
            grid[i][j] = Some(v);
        }
        Ok(Assignment { stage, grid })
    }

    pub fn from_grid(stage: Stage, grid: Vec<Vec<Option<i64>>>) -> Self {
        Assignment { stage, grid }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn grid(&self) -> &[Vec<Option<i64>>] {
        &self.grid
    }

    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        self.grid.get(row).and_then(|r| r.get(col)).copied().flatten()
    }

    pub fn value(&self, row: usize, col: usize) -> Result<i64> {
        self.get(row, col).ok_or(Error::UncoveredEdge(row, col))
    }

    pub fn edge_values(&self, base: &BaseCode) -> Result<Vec<i64>> {
        base.edges().iter().map(|&(i, j)| self.value(i, j)).collect()
    }

    /// Checks that exactly the masked edges carry values and that the values
    /// lie in the domain implied by the stage.
    pub fn validate(&self, base: &BaseCode, scheme: &CouplingScheme) -> Result<()> {
        if self.grid.len() != base.gamma() || self.grid.iter().any(|r| r.len() != base.kappa()) {
            return Err(Error::DimensionMismatch(format!(
                "assignment is not {}x{}",
                base.gamma(),
                base.kappa()
            )));
        }
        for i in 0..base.gamma() {
            for j in 0..base.kappa() {
                match (base.has_edge(i, j), self.grid[i][j]) {
                    (true, None) => return Err(Error::UncoveredEdge(i, j)),
                    (false, Some(_)) => return Err(Error::InvalidAssignment(format!("value at non-edge ({i}, {j})"))),
                    (true, Some(v)) => match self.stage {
                        Stage::Partition if !scheme.pattern().contains(&v) => {
                            return Err(Error::InvalidAssignment(format!(
                                "partition value {v} at ({i}, {j}) is not in the pattern"
                            )))
                        }
                        Stage::Lift if v < 0 || v as u64 >= scheme.lifting_degree() => {
                            return Err(Error::LiftOutOfRange {
                                row: i,
                                col: j,
                                value: v,
                                degree: scheme.lifting_degree(),
                            })
                        }
                        _ => {}
                    },
                    (false, None) => {}
                }
            }
        }
        Ok(())
    }
}
