use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::run::{run_experiment, ExperimentReport, Verdict};
use crate::error::{Error, Result};
use crate::rational;

/// Parameter varied by a sweep; every other field comes from the config.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "vary", content = "values")]
pub enum Vary {
    Memory(Vec<usize>),
    #[serde(rename = "Z")]
    LiftingDegree(Vec<u64>),
    Gamma(Vec<usize>),
}

impl Vary {
    fn configs(&self, cfg: &ExperimentConfig) -> Vec<ExperimentConfig> {
        match self {
            Vary::Memory(ms) => ms.iter().map(|&m| cfg.with_memory(m)).collect(),
            Vary::LiftingDegree(zs) => zs
                .iter()
                .map(|&z| ExperimentConfig {
                    lifting_degree: z,
                    ..cfg.clone()
                })
                .collect(),
            Vary::Gamma(gs) => gs
                .iter()
                .map(|&g| ExperimentConfig {
                    gamma: g,
                    mask: None,
                    ..cfg.clone()
                })
                .collect(),
        }
    }
}

const HEADER: [&str; 20] = [
    "gamma",
    "kappa",
    "memory",
    "Z",
    "mode",
    "trials",
    "seed",
    "delta",
    "p_omega_eliminated_max",
    "p_omega_eliminated_max_f64",
    "feasible",
    "resample_bound",
    "resample_mean",
    "resample_max",
    "resample_check",
    "failed",
    "max_ratio",
    "max_ratio_upper",
    "symmetric_precondition",
    "error",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn row(cfg: &ExperimentConfig, outcome: &Result<ExperimentReport>) -> Vec<String> {
    let memory = cfg
        .pattern
        .as_ref()
        .and_then(|p| p.last().copied())
        .map(|m| m.to_string())
        .or_else(|| cfg.memory.map(|m| m.to_string()))
        .unwrap_or_default();
    let mode = serde_json::to_value(cfg.mode)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let mut cells = vec![
        cfg.gamma.to_string(),
        cfg.kappa.to_string(),
        memory,
        cfg.lifting_degree.to_string(),
        mode,
        cfg.trials.to_string(),
        cfg.seed.to_string(),
    ];
    match outcome {
        Ok(r) => {
            let s = &r.shift;
            let t = &r.resample_check;
            let verdict = match t.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::NotApplicable => "n/a",
            };
            cells.extend([
                s.delta.to_string(),
                rational::format(&s.p_max_eliminated),
                rational::to_f64(&s.p_max_eliminated).to_string(),
                s.condition_held.to_string(),
                opt(t.bound.as_ref().map(rational::format)),
                s.resamples.mean.to_string(),
                s.resamples.max.to_string(),
                verdict.to_string(),
                s.failed.to_string(),
                opt(s.max_ratio),
                opt(s.max_ratio_upper),
                s.symmetric_precondition.to_string(),
                String::new(),
            ]);
        }
        Err(e) => {
            cells.extend(std::iter::repeat_n(String::new(), HEADER.len() - cells.len() - 1));
            cells.push(e.to_string());
        }
    }
    cells
}

/// Re-runs the experiment for each value of the varied parameter and writes
/// one CSV row per configuration. A failing configuration is recorded in
/// the `error` column and the sweep continues.
pub fn sweep(cfg: &ExperimentConfig, vary: &Vary) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).map_err(|e| Error::Io(e.to_string()))?;
    for c in vary.configs(cfg) {
        let outcome = run_experiment(&c);
        w.write_record(row(&c, &outcome))
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
