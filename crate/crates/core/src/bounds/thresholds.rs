use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest exponent for which thresholds are also kept as exact rationals.
pub const EXACT_EXPONENT_LIMIT: u64 = 2048;

/// A threshold value in double precision, plus its exact rational form when
/// the exponents are small enough to expand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Threshold {
    pub value: f64,
    #[serde(serialize_with = "crate::rational::ser_opt_str")]
    pub exact: Option<Rational>,
}

impl Threshold {
    /// `p <= self`, exact when possible.
    pub fn admits(&self, p: &Rational) -> bool {
        match &self.exact {
            Some(t) => p <= t,
            None => rational::to_f64(p) <= self.value,
        }
    }

    pub fn cmp_value(&self, other: &Threshold) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => self.value.total_cmp(&other.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// Pairwise cliques, `x = 1/Delta`.
    I,
    /// One clique per base edge, `x = 1/((W-1)|H|)`.
    II,
}

/// `(n-1)^(n-1) / n^n` evaluated as `(1/n) * exp((n-1) * ln(1 - 1/n))`.
/// The log1p form keeps the relative error near machine precision for any `n`.
fn falling_ratio(n: u64) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let nf = n as f64;
    ((nf - 1.0) * (-1.0 / nf).ln_1p()).exp() / nf
}

fn falling_ratio_exact(n: u64) -> Option<Rational> {
    if n <= 1 {
        return Some(Rational::one());
    }
    if n > EXACT_EXPONENT_LIMIT {
        return None;
    }
    let num = BigInt::from(n - 1).pow((n - 1) as u32);
    let den = BigInt::from(n).pow(n as u32);
    Some(BigRational::new(num, den))
}

/// Branch I: `(Delta-1)^(Delta-1) / Delta^Delta`, with `0^0 = 1`.
/// `Delta = 0` (isolated event) also yields 1.
pub fn threshold_i(delta: u64) -> Threshold {
    Threshold {
        value: falling_ratio(delta),
        exact: falling_ratio_exact(delta),
    }
}

/// Branch II: `(|H|-1)^(|H|-1) / ((W-1) |H|^|H|)`; undefined for `W = 1`.
pub fn threshold_ii(h_size: u64, w: u64) -> Result<Threshold> {
    if h_size < 2 {
        return Err(Error::InvalidParameter(format!("|H| must be >= 2, got {h_size}")));
    }
    if w < 2 {
        return Err(Error::NotApplicable(format!(
            "branch II needs a harmful weight of at least 2, got {w}"
        )));
    }
    let scale = (w - 1) as f64;
    Ok(Threshold {
        value: falling_ratio(h_size) / scale,
        exact: falling_ratio_exact(h_size).map(|r| r / rational::int((w - 1) as i64)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thresholds {
    pub i: Threshold,
    pub ii: Option<Threshold>,
    pub branch: Branch,
}

impl Thresholds {
    pub fn best(&self) -> &Threshold {
        match self.branch {
            Branch::I => &self.i,
            Branch::II => self.ii.as_ref().expect("branch II selected only when defined"),
        }
    }

    /// `p` meets the larger threshold. Probability one never qualifies: every
    /// clique-LLL witness keeps each event probability below its `x < 1`.
    pub fn admits(&self, p: &Rational) -> bool {
        *p < Rational::one() && self.best().admits(p)
    }
}

/// Both thresholds and the winning branch (II on ties).
pub fn theorem1_thresholds(delta: u64, h_size: u64, w: u64) -> Result<Thresholds> {
    let i = threshold_i(delta);
    let ii = match threshold_ii(h_size, w) {
        Ok(t) => Some(t),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    let branch = match &ii {
        Some(ii) if i.cmp_value(ii) != Ordering::Greater => Branch::II,
        _ => Branch::I,
    };
    Ok(Thresholds { i, ii, branch })
}
