//! Monte Carlo checks of the resample bound and of the distribution shift
//! caused by eliminating short cycles.

mod config;
mod run;
mod stats;
mod sweep;

pub use config::{ConstructionMode, CycleClass, ExperimentConfig, Region};
pub use run::{
    estimate_baseline, estimate_mt_shift, run_experiment, verify_theorem2, BaselineObservable, BaselineStats,
    ExperimentReport, ExperimentStats, ObservableStats, ResampleCheck, Verdict,
};
pub use stats::{wilson_interval, Summary, Z95, Z99_ONE_SIDED};
pub use sweep::{sweep, Vary};
