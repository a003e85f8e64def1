use super::candidate::WalkCandidate;
use crate::code::Assignment;
use crate::error::{Error, Result};

fn weighted_sum(c: &WalkCandidate, values: &Assignment) -> Result<i64> {
    c.coeffs()
        .iter()
        .try_fold(0i64, |acc, (&(i, j), &k)| Ok(acc + k * values.value(i, j)?))
}

/// The candidate survives edge-spreading: `sum P(i_k, j_k) = sum P(i_k, j_{k+1})`.
pub fn is_active_partition(c: &WalkCandidate, partition: &Assignment) -> Result<bool> {
    Ok(weighted_sum(c, partition)? == 0)
}

/// The candidate closes after Z-lifting: the same balance holds modulo `z`.
pub fn is_active_lift(c: &WalkCandidate, lift: &Assignment, z: u64) -> Result<bool> {
    if z < 1 {
        return Err(Error::InvalidLiftingDegree);
    }
    Ok(weighted_sum(c, lift)?.rem_euclid(z as i64) == 0)
}
