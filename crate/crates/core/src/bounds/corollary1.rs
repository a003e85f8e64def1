use serde::Serialize;

use super::thresholds::{threshold_i, Branch, Threshold};
use crate::error::{Error, Result};
use crate::probability::spreading_prob_c4_uniform;
use crate::rational::{self, Rational};
use crate::walks::c4_delta_formula;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Girth6Check {
    pub gamma: usize,
    pub kappa: usize,
    pub memory: u64,
    pub lifting_degree: u64,
    pub delta: u64,
    #[serde(serialize_with = "crate::rational::ser_str")]
    pub lhs: Rational,
    pub lhs_f64: f64,
    pub threshold_i: Threshold,
    /// `27 / (256 (gamma kappa - gamma - kappa))`; absent when the denominator is not positive.
    pub threshold_ii: Option<Threshold>,
    pub branch: Branch,
    pub threshold: f64,
    pub feasible: bool,
    pub margin: f64,
    pub avoidance_lower_bound: Option<f64>,
}

/// Girth-6 sufficient condition for the all-ones `gamma x kappa` base with
/// uniform spreading of memory `m` and lifting degree `z`.
pub fn corollary1_check(gamma: usize, kappa: usize, m: u64, z: u64) -> Result<Girth6Check> {
    if gamma < 2 || kappa < 2 {
        return Err(Error::InvalidParameter("gamma and kappa must be at least 2".into()));
    }
    if z < 1 {
        return Err(Error::InvalidLiftingDegree);
    }
    let delta = c4_delta_formula(gamma, kappa) as u64;
    let lhs = spreading_prob_c4_uniform(m as i64)? / rational::int(z as i64);
    let t1 = threshold_i(delta);
    let excess = (gamma * kappa) as i64 - gamma as i64 - kappa as i64;
    let t2 = (excess > 0).then(|| {
        let exact = rational::ratio(27, 256 * excess);
        Threshold {
            value: rational::to_f64(&exact),
            exact: Some(exact),
        }
    });
    let branch = match &t2 {
        Some(t2) if t1.cmp_value(t2) != std::cmp::Ordering::Greater => Branch::II,
        _ => Branch::I,
    };
    let best = match branch {
        Branch::I => &t1,
        Branch::II => t2.as_ref().unwrap(),
    };
    let feasible = lhs < Rational::from_integer(1.into()) && best.admits(&lhs);
    let lhs_f64 = rational::to_f64(&lhs);
    let avoidance_lower_bound = match branch {
        Branch::I if delta >= 3 => {
            let (g, k) = (gamma as f64, kappa as f64);
            let exponent = g * (g - 1.0) * k * (k - 1.0) * delta as f64 / 8.0;
            Some((exponent * (-2.0 / delta as f64).ln_1p()).exp())
        }
        Branch::I => None,
        Branch::II => {
            let frac = (excess + 1) as f64 / (4 * excess) as f64;
            Some(((gamma * kappa) as f64 * (-frac).ln_1p()).exp())
        }
    };
    Ok(Girth6Check {
        gamma,
        kappa,
        memory: m,
        lifting_degree: z,
        delta,
        lhs,
        lhs_f64,
        threshold: best.value,
        margin: best.value - lhs_f64,
        threshold_i: t1,
        threshold_ii: t2,
        branch,
        feasible,
        avoidance_lower_bound,
    })
}

/// Smallest lifting degree satisfying [`corollary1_check`]. The left side is
/// strictly decreasing in `z`, so a linear scan stops at the crossover.
pub fn corollary1_min_z(gamma: usize, kappa: usize, m: u64) -> Result<u64> {
    let mut z = 1;
    loop {
        if corollary1_check(gamma, kappa, m, z)?.feasible {
            return Ok(z);
        }
        z += 1;
    }
}

/// Smallest memory satisfying [`corollary1_check`] at lifting degree `z`.
/// The left side decreases in `m` towards zero, so the scan terminates.
pub fn corollary1_min_m(gamma: usize, kappa: usize, z: u64) -> Result<u64> {
    let mut m = 0;
    loop {
        if corollary1_check(gamma, kappa, m, z)?.feasible {
            return Ok(m);
        }
        m += 1;
    }
}
