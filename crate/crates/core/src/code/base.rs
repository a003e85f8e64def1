use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary base matrix. Rows are check nodes, columns are variable nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseCode {
    gamma: usize,
    kappa: usize,
    mask: Vec<Vec<bool>>,
}

impl BaseCode {
    /// Fully connected `gamma x kappa` base.
    pub fn all_ones(gamma: usize, kappa: usize) -> Result<Self> {
        Self::from_mask(vec![vec![true; kappa]; gamma])
    }

    pub fn from_mask(mask: Vec<Vec<bool>>) -> Result<Self> {
        let gamma = mask.len();
        if gamma == 0 {
            return Err(Error::InvalidBase("no rows".into()));
        }
        let kappa = mask[0].len();
        if kappa == 0 {
            return Err(Error::InvalidBase("no columns".into()));
        }
        if mask.iter().any(|r| r.len() != kappa) {
            return Err(Error::InvalidBase("ragged mask".into()));
        }
        Ok(BaseCode { gamma, kappa, mask })
    }

    /// Accepts an integer matrix; entries above 1 are parallel edges and are rejected.
    pub fn from_counts(counts: &[Vec<u32>]) -> Result<Self> {
        let mut mask = Vec::with_capacity(counts.len());
        for (i, row) in counts.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, &c) in row.iter().enumerate() {
                if c > 1 {
                    return Err(Error::InvalidBase(format!(
                        "parallel edges at ({i}, {j}): multigraph bases are not supported"
                    )));
                }
                r.push(c == 1);
            }
            mask.push(r);
        }
        Self::from_mask(mask)
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn mask(&self) -> &[Vec<bool>] {
        &self.mask
    }

    pub fn has_edge(&self, row: usize, col: usize) -> bool {
        row < self.gamma && col < self.kappa && self.mask[row][col]
    }

    pub fn is_all_ones(&self) -> bool {
        self.mask.iter().all(|r| r.iter().all(|&b| b))
    }

    /// Masked edges in row-major order. The position of an edge in this list
    /// is its variable index throughout the crate.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.gamma {
            for j in 0..self.kappa {
                if self.mask[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.mask.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }

    /// Row-major variable index of edge `(row, col)`.
    pub fn edge_index(&self, row: usize, col: usize) -> Option<usize> {
        if !self.has_edge(row, col) {
            return None;
        }
        let before: usize = self.mask[..row].iter().map(|r| r.iter().filter(|&&b| b).count()).sum();
        Some(before + self.mask[row][..col].iter().filter(|&&b| b).count())
    }

    pub fn col_weight(&self, col: usize) -> usize {
        self.mask.iter().filter(|r| r[col]).count()
    }

    /// Errors unless the base is fully connected with at least two rows and columns.
    pub fn require_all_ones(&self) -> Result<()> {
        if !self.is_all_ones() {
            return Err(Error::InvalidBase(
                "closed-form bound calculators require the all-ones base".into(),
            ));
        }
        if self.gamma < 2 || self.kappa < 2 {
            return Err(Error::InvalidBase("gamma and kappa must be at least 2".into()));
        }
        Ok(())
    }
}
