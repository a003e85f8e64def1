use serde::{Deserialize, Serialize};

use crate::bounds::DeltaSource;
use crate::code::{BaseCode, CouplingScheme};
use crate::error::{Error, Result};
use crate::rational;
use crate::walks::{enumerate_cycles, CandidateSet, WalkMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionMode {
    #[default]
    TwoStage,
    Joint,
    PartitionOnly,
}

/// Half-open block of base rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

impl Region {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        (self.rows[0]..self.rows[1]).contains(&row) && (self.cols[0]..self.cols[1]).contains(&col)
    }
}

/// Cycle lengths, optionally restricted to candidates lying inside a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleClass {
    pub lengths: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
}

impl CycleClass {
    pub fn lengths(lengths: &[usize]) -> Self {
        CycleClass {
            lengths: lengths.to_vec(),
            region: None,
        }
    }

    pub fn in_region(mut self, region: Region) -> Self {
        self.region = Some(region);
        self
    }

    pub fn candidates(&self, base: &BaseCode, mode: WalkMode) -> Result<CandidateSet> {
        let mut set = CandidateSet::from_candidates(Vec::new());
        for &len in &self.lengths {
            set = set.union(&enumerate_cycles(base, len, mode)?);
        }
        Ok(match &self.region {
            Some(r) => set.filter(|c| c.edges().all(|(i, j)| r.contains(i, j))),
            None => set,
        })
    }
}

fn default_eliminate() -> CycleClass {
    CycleClass::lengths(&[4])
}

fn default_observe() -> CycleClass {
    CycleClass::lengths(&[6])
}

fn default_trials() -> u64 {
    1000
}

fn default_z() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub gamma: usize,
    pub kappa: usize,
    /// Base mask; all ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<Vec<Vec<u8>>>,
    /// Uniform pattern `0..=memory`, used when `pattern` is absent.
    #[serde(default, alias = "m", skip_serializing_if = "Option::is_none")]
    pub memory: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<i64>>,
    /// Rationals as `"p/q"`; uniform when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probs: Option<Vec<String>>,
    #[serde(rename = "Z", default = "default_z")]
    pub lifting_degree: u64,
    /// Defaults to `memory + 1`.
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub coupling_length: Option<usize>,
    #[serde(default = "default_eliminate")]
    pub eliminate: CycleClass,
    #[serde(default = "default_observe")]
    pub observe: CycleClass,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: ConstructionMode,
    #[serde(default)]
    pub delta_source: DeltaSource,
    #[serde(default)]
    pub walk_mode: WalkMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_resamples: Option<u64>,
}

impl ExperimentConfig {
    /// All-ones base, uniform pattern `0..=memory`, 4-cycles eliminated,
    /// 6-cycles observed.
    pub fn new(gamma: usize, kappa: usize, memory: usize, lifting_degree: u64) -> Self {
        ExperimentConfig {
            gamma,
            kappa,
            mask: None,
            memory: Some(memory),
            pattern: None,
            probs: None,
            lifting_degree,
            coupling_length: None,
            eliminate: default_eliminate(),
            observe: default_observe(),
            trials: default_trials(),
            seed: 0,
            mode: ConstructionMode::default(),
            delta_source: DeltaSource::default(),
            walk_mode: WalkMode::default(),
            max_resamples: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        let base = self.base()?;
        self.scheme()?;
        let elim = self.eliminate.candidates(&base, self.walk_mode)?;
        let obs = self.observe.candidates(&base, self.walk_mode)?;
        if let Some(c) = obs
            .candidates()
            .iter()
            .find(|c| elim.candidates().binary_search_by(|e| e.key().cmp(c.key())).is_ok())
        {
            return Err(Error::InvalidParameter(format!(
                "candidate {} is both eliminated and observed",
                c.key()
            )));
        }
        Ok(())
    }

    pub fn base(&self) -> Result<BaseCode> {
        match &self.mask {
            None => BaseCode::all_ones(self.gamma, self.kappa),
            Some(mask) => {
                let counts: Vec<Vec<u32>> = mask.iter().map(|r| r.iter().map(|&v| v as u32).collect()).collect();
                let base = BaseCode::from_counts(&counts)?;
                if base.gamma() != self.gamma || base.kappa() != self.kappa {
                    return Err(Error::DimensionMismatch("mask shape disagrees with gamma/kappa".into()));
                }
                Ok(base)
            }
        }
    }

    pub fn scheme(&self) -> Result<CouplingScheme> {
        let pattern: Vec<i64> = match (&self.pattern, self.memory) {
            (Some(p), _) => p.clone(),
            (None, Some(m)) => (0..=m as i64).collect(),
            (None, None) => return Err(Error::InvalidScheme("either pattern or memory is required".into())),
        };
        let probs = match &self.probs {
            Some(p) => p.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?,
            None => vec![rational::ratio(1, pattern.len() as i64); pattern.len()],
        };
        let memory = *pattern.last().unwrap_or(&0) as usize;
        let l = self.coupling_length.unwrap_or(memory + 1);
        CouplingScheme::new(pattern, probs, l, self.lifting_degree)
    }

    pub fn with_memory(&self, memory: usize) -> Self {
        ExperimentConfig {
            memory: Some(memory),
            pattern: None,
            probs: None,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_defaults_and_round_trip() {
        let cfg = ExperimentConfig::from_json(r#"{"gamma":3,"kappa":3,"memory":2,"Z":4}"#).unwrap();
        assert_eq!(cfg.eliminate.lengths, vec![4]);
        assert_eq!(cfg.observe.lengths, vec![6]);
        assert_eq!(cfg.trials, 1000);
        assert_eq!(cfg.scheme().unwrap().pattern(), &[0, 1, 2]);
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_overlap_and_zero_trials() {
        let mut cfg = ExperimentConfig::new(3, 3, 1, 4);
        cfg.observe = CycleClass::lengths(&[4, 6]);
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::new(3, 3, 1, 4);
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        assert!(ExperimentConfig::from_json(r#"{"gamma":3,"kappa":3,"memory":1,"bogus":1}"#).is_err());
    }

    #[test]
    fn region_filter() {
        let base = BaseCode::all_ones(6, 8).unwrap();
        let class = CycleClass::lengths(&[4]).in_region(Region {
            rows: [0, 3],
            cols: [0, 4],
        });
        let set = class.candidates(&base, WalkMode::Simple).unwrap();
        assert_eq!(set.len(), 3 * 6);
    }
}
