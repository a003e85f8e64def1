//! Clique Lovász Local Lemma thresholds, avoidance and resample bounds, and
//! distribution-shift factors.

mod clique;
mod corollary1;
mod feasibility;
mod resample;
mod shift;
mod thresholds;

pub use clique::{clique_lll_evaluate, CliqueCover, CliqueLllOutcome, CoverKind};
pub use corollary1::{corollary1_check, corollary1_min_m, corollary1_min_z, Girth6Check};
pub use feasibility::{is_full_c4_set, theorem1_feasibility, BoundReport, DeltaSource};
pub use resample::theorem2_resample_bound;
pub use shift::{
    corollary4_bound, e_eight_thirds, shift_bound_asymmetric, shift_bound_symmetric, ShiftCap, SymmetricShift,
};
pub use thresholds::{
    theorem1_thresholds, threshold_i, threshold_ii, Branch, Threshold, Thresholds, EXACT_EXPONENT_LIMIT,
};
