//! Moser-Tardos resampling over a generic variable framework and its
//! two-stage instantiation for the partition and lifting matrices.

mod engine;
mod framework;
pub mod rng;
mod stages;

pub use engine::{run_mt, MTTrace, INNER_ORDER};
pub use framework::{Domain, Event, EventTable, Predicate, VariableFramework};
pub use stages::{
    construct_two_stage, default_max_resamples, joint_event_table, run_joint, run_stage_lift, run_stage_partition,
    MtOptions, TwoStageTrace, FALLBACK_MAX_RESAMPLES,
};
