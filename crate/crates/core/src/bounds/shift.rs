//! Distribution-shift factors: how much conditioning on (or resampling away)
//! a set of bad events can inflate the probability of another event.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::walks::c4_delta_formula;

/// `prod_B 1/(1 - x_B)` over the eliminated events neighboring `E`.
pub fn shift_bound_asymmetric(neighborhood_x: &[f64]) -> Result<f64> {
    let mut log = 0.0;
    for &x in neighborhood_x {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidParameter(format!("x_B = {x} is outside (0, 1)")));
        }
        log -= (-x).ln_1p();
    }
    Ok(log.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricShift {
    /// `(1 + e p)^n`
    pub bound: f64,
    /// `(1 + 1/Delta)^n`
    pub relaxed: f64,
    /// `e p (Delta + 1) <= 1`
    pub condition_holds: bool,
}

pub fn shift_bound_symmetric(p: f64, delta: u64, n_size: u64) -> Result<SymmetricShift> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not a probability")));
    }
    let n = n_size as f64;
    let relaxed = if n_size == 0 {
        1.0
    } else if delta == 0 {
        f64::INFINITY
    } else {
        (n * (1.0 / delta as f64).ln_1p()).exp()
    };
    Ok(SymmetricShift {
        bound: (n * (E * p).ln_1p()).exp(),
        relaxed,
        condition_holds: E * p * (delta as f64 + 1.0) <= 1.0,
    })
}

/// `e^(8/3)`, the universal cap on the 6-cycle shift once all 4-cycles are removed.
pub fn e_eight_thirds() -> f64 {
    (8.0f64 / 3.0).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftCap {
    pub value: f64,
    /// Present for `two_k = 6` on bases with `gamma, kappa >= 3`.
    pub cap: Option<f64>,
}

/// `(1 + 1/((2g-3)(2k-3)))^(two_k (g-1)(k-1))`: the shift factor for a
/// `two_k`-cycle after all 4-cycles of the all-ones base are eliminated.
pub fn corollary4_bound(gamma: usize, kappa: usize, two_k: usize) -> Result<ShiftCap> {
    if gamma < 2 || kappa < 2 {
        return Err(Error::InvalidParameter("gamma and kappa must be at least 2".into()));
    }
    let delta = c4_delta_formula(gamma, kappa) as f64;
    let w = ((gamma - 1) * (kappa - 1)) as f64;
    let value = (two_k as f64 * w * (1.0 / delta).ln_1p()).exp();
    let cap = (two_k == 6 && gamma >= 3 && kappa >= 3).then(e_eight_thirds);
    if let Some(cap) = cap {
        assert!(value <= cap, "6-cycle shift {value} exceeds e^(8/3)");
    }
    Ok(ShiftCap { value, cap })
}
