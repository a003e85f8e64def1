use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Coupling pattern, spreading distribution, coupling length and lifting degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingScheme {
    pattern: Vec<i64>,
    #[serde(with = "rational::serde_str_vec")]
    probs: Vec<Rational>,
    coupling_length: usize,
    lifting_degree: u64,
}

impl CouplingScheme {
    pub fn new(pattern: Vec<i64>, probs: Vec<Rational>, coupling_length: usize, lifting_degree: u64) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::InvalidScheme("empty pattern".into()));
        }
        if pattern.len() != probs.len() {
            return Err(Error::InvalidScheme(format!(
                "pattern has {} entries but probs has {}",
                pattern.len(),
                probs.len()
            )));
        }
        if pattern[0] < 0 {
            return Err(Error::InvalidScheme("pattern entries must be >= 0".into()));
        }
        if pattern.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScheme("pattern must be strictly increasing".into()));
        }
        if probs.iter().any(|p| *p <= Rational::zero()) {
            return Err(Error::InvalidScheme("probabilities must be positive".into()));
        }
        let total: Rational = probs.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidScheme(format!(
                "probabilities sum to {}, not 1",
                rational::format(&total)
            )));
        }
        if lifting_degree < 1 {
            return Err(Error::InvalidLiftingDegree);
        }
        let memory = *pattern.last().unwrap() as usize;
        if coupling_length < memory + 1 {
            return Err(Error::CouplingTooShort {
                length: coupling_length,
                required: memory + 1,
            });
        }
        Ok(CouplingScheme {
            pattern,
            probs,
            coupling_length,
            lifting_degree,
        })
    }

    /// Pattern `(0, 1, ..., m)` with probability `1/(m+1)` each.
    pub fn uniform(memory: usize, coupling_length: usize, lifting_degree: u64) -> Result<Self> {
        let n = memory as i64 + 1;
        Self::new(
            (0..n).collect(),
            vec![rational::ratio(1, n); n as usize],
            coupling_length,
            lifting_degree,
        )
    }

    pub fn pattern(&self) -> &[i64] {
        &self.pattern
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn memory(&self) -> usize {
        *self.pattern.last().unwrap() as usize
    }

    pub fn coupling_length(&self) -> usize {
        self.coupling_length
    }

    pub fn lifting_degree(&self) -> u64 {
        self.lifting_degree
    }

    pub fn is_uniform(&self) -> bool {
        let n = self.pattern.len() as i64;
        self.pattern.iter().copied().eq(0..n) && self.probs.iter().all(|p| *p == rational::ratio(1, n))
    }

    pub fn with_lifting_degree(&self, lifting_degree: u64) -> Result<Self> {
        Self::new(
            self.pattern.clone(),
            self.probs.clone(),
            self.coupling_length,
            lifting_degree,
        )
    }
}
