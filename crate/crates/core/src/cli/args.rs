use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "qcsc",
    version,
    about = "QC-SC LDPC construction with Moser-Tardos resampling"
)]
pub struct Cli {
    /// Base RNG seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print the machine-readable report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for written artifacts.
    #[arg(long = "out-dir", global = true)]
    pub out_dir: Option<PathBuf>,
    /// JSON file with default values; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the LLL thresholds, minimum Z / m, resample bound and shift caps.
    Bounds(BoundsArgs),
    /// List cycle candidates of a base matrix.
    Enumerate(EnumerateArgs),
    /// Build a code whose lifted graph avoids the targeted cycles.
    Construct(ConstructArgs),
    /// Re-check a stored instance from scratch.
    Verify(VerifyArgs),
    /// Run Monte Carlo experiments or sweeps.
    Experiment(ExperimentArgs),
    /// Convert an instance to alist or dense form.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct CodeArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<usize>,
    /// Memory of the uniform pattern 0..=m.
    #[arg(long = "m")]
    #[serde(rename = "m", alias = "memory", skip_serializing_if = "Option::is_none")]
    pub memory: Option<usize>,
    /// Lifting degree.
    #[arg(long = "Z")]
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none")]
    pub lifting_degree: Option<u64>,
    /// Coupling length.
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub coupling_length: Option<usize>,
    /// Explicit pattern, e.g. `0,2,3`; overrides `--m`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<i64>>,
    /// Pattern probabilities as `p/q`, e.g. `1/2,1/4,1/4`.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    /// Cycle classes for the enumerated report, e.g. `c4,c6`.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    /// `paper-formula` (closed form) or `observed`.
    #[arg(long = "delta-source")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_source: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    /// Cycle classes, e.g. `c4,c6`.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    /// `simple` or `tbc`.
    #[arg(long = "walk-mode")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_mode: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[arg(long = "walk-mode")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_mode: Option<String>,
    /// `two-stage` or `joint`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[arg(long = "max-resamples")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_resamples: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// Instance JSON.
    #[arg(long = "in")]
    #[serde(rename = "in", skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[arg(long = "walk-mode")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_mode: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub trials: Option<u64>,
    /// `two-stage`, `joint` or `partition-only`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub eliminate: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub observe: Option<Vec<String>>,
    #[arg(long = "delta-source")]
    pub delta_source: Option<String>,
    #[arg(long = "max-resamples")]
    pub max_resamples: Option<u64>,
    /// Compare exact fresh-sample probabilities with sampled frequencies.
    #[arg(long, conflicts_with = "sweep")]
    pub baseline: bool,
    /// Sweep one parameter: `m=1..10`, `Z=4,8,16` or `gamma=3..5`.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExportArgs {
    /// Instance JSON or alist file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Write the lifted matrix as alist.
    #[arg(long)]
    pub alist: Option<PathBuf>,
    /// Write the lifted matrix as rows of 0/1.
    #[arg(long)]
    pub dense: Option<PathBuf>,
    /// Write the protograph as alist (instance input only).
    #[arg(long)]
    pub protograph: Option<PathBuf>,
}
