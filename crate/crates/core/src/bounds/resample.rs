use super::thresholds::Branch;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Expected number of RESAMPLE calls under the clique-LLL condition:
/// `k / (Delta - 2)` on branch I, `k / ((W-1)|H| - W)` on branch II.
pub fn theorem2_resample_bound(k: u64, delta: u64, w: u64, h_size: u64, branch: Branch) -> Result<Rational> {
    match branch {
        Branch::I => {
            if delta <= 2 {
                return Err(Error::NotApplicable(format!(
                    "branch I resample bound needs Delta > 2, got {delta}"
                )));
            }
            Ok(rational::ratio(k as i64, delta as i64 - 2))
        }
        Branch::II => {
            let den = (w as i64 - 1) * h_size as i64 - w as i64;
            if w < 2 || den <= 0 {
                return Err(Error::NotApplicable(format!(
                    "branch II resample bound undefined for W = {w}, |H| = {h_size}"
                )));
            }
            Ok(rational::ratio(k as i64, den))
        }
    }
}
