//! Construction of quasi-cyclic spatially-coupled LDPC codes free of short
//! cycles via Moser-Tardos resampling, with exact activation probabilities and
//! clique Lovász Local Lemma bound evaluators.

pub mod bounds;
pub mod cli;
pub mod code;
pub mod error;
pub mod experiment;
pub mod mt;
pub mod probability;
pub mod rational;
pub mod walks;

pub use error::{Error, Result};
