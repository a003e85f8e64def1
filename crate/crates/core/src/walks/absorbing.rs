use std::collections::BTreeMap;

use crate::code::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbsorbingClass {
    pub a: usize,
    pub b: usize,
    pub is_absorbing: bool,
}

/// Classifies a variable-node subset as an `(a, b)` set and reports whether
/// every member has strictly more even-degree than odd-degree check neighbors
/// in the induced subgraph. Duplicate indices are ignored.
///
/// A subset with no check neighbors at all is absorbing vacuously.
pub fn classify_absorbing_set(h: &SparseMatrix, vn_subset: &[usize]) -> Result<AbsorbingClass> {
    if vn_subset.is_empty() {
        return Err(Error::InvalidParameter("empty variable-node subset".into()));
    }
    let mut subset = vn_subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    for &v in &subset {
        if v >= h.num_cols() {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: h.num_cols(),
            });
        }
    }
    let mut cn_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &subset {
        for &c in h.col(v) {
            *cn_degree.entry(c).or_insert(0) += 1;
        }
    }
    let b = cn_degree.values().filter(|&&d| d % 2 == 1).count();
    let is_absorbing = cn_degree.is_empty()
        || subset.iter().all(|&v| {
            let odd = h.col(v).iter().filter(|c| cn_degree[c] % 2 == 1).count();
            let even = h.col(v).len() - odd;
            even > odd
        });
    Ok(AbsorbingClass {
        a: subset.len(),
        b,
        is_absorbing,
    })
}
