//! MacKay alist text format.
//!
//! Layout: `N M` (columns first), the maximum column and row degrees, the
//! column degree list, the row degree list, then one line of 1-indexed row
//! indices per column and one line of 1-indexed column indices per row. Short
//! neighbor lines are padded with zeros up to the maximum degree.

use std::fmt::Write;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

pub fn export_alist(h: &SparseMatrix) -> String {
    let rows = h.rows();
    let cols = h.cols();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{} {}", h.num_cols(), h.num_rows()).unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut rows.iter().map(Vec::len))).unwrap();
    for c in cols {
        let padded = c.iter().map(|&r| r + 1).chain(std::iter::repeat(0)).take(max_col);
        writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
    }
    for r in &rows {
        let padded = r.iter().map(|&c| c + 1).chain(std::iter::repeat(0)).take(max_row);
        writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
    }
    out
}

pub fn parse_alist(text: &str) -> Result<SparseMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let mut next_nums = |what: &str| -> Result<Vec<usize>> {
        let line = lines.next().ok_or_else(|| Error::Alist(format!("missing {what}")))?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Alist(format!("bad number {t:?} in {what}")))
            })
            .collect()
    };
    let header = next_nums("header")?;
    let [n, m] = header[..] else {
        return Err(Error::Alist("header must be `N M`".into()));
    };
    // An all-zero side has max degree 0 and writes blank neighbor lines,
    // which the line filter above drops.
    let max_deg = next_nums("max degrees")?;
    let [max_col, max_row] = max_deg[..] else {
        return Err(Error::Alist("max degree line must hold two numbers".into()));
    };
    let col_deg = next_nums("column degrees")?;
    let row_deg = next_nums("row degrees")?;
    if col_deg.len() != n || row_deg.len() != m {
        return Err(Error::Alist("degree list lengths disagree with header".into()));
    }
    let mut h = SparseMatrix::new(m, n);
    for (j, &d) in col_deg.iter().enumerate() {
        let entries = if max_col == 0 {
            Vec::new()
        } else {
            next_nums("column list")?
        };
        let nz: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
        if nz.len() != d {
            return Err(Error::Alist(format!(
                "column {} has {} entries, expected {d}",
                j + 1,
                nz.len()
            )));
        }
        for r in nz {
            if r > m {
                return Err(Error::Alist(format!("row index {r} out of range")));
            }
            h.insert(r - 1, j);
        }
    }
    let mut rows = vec![Vec::new(); m];
    for (i, &d) in row_deg.iter().enumerate() {
        let entries = if max_row == 0 {
            Vec::new()
        } else {
            next_nums("row list")?
        };
        let nz: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
        if nz.len() != d {
            return Err(Error::Alist(format!(
                "row {} has {} entries, expected {d}",
                i + 1,
                nz.len()
            )));
        }
        rows[i] = nz.into_iter().map(|c| c - 1).collect();
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.sort_unstable();
        let expect: Vec<usize> = (0..n).filter(|&j| h.contains(i, j)).collect();
        if *r != expect {
            return Err(Error::Alist(format!("row {} list disagrees with column lists", i + 1)));
        }
    }
    Ok(h)
}
