use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Finite distribution of one variable, stored as integer weights so that
/// sampling is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    values: Vec<i64>,
    weights: Vec<u64>,
    total: u64,
}

impl Domain {
    pub fn new(values: Vec<i64>, probs: &[Rational]) -> Result<Self> {
        if values.is_empty() || values.len() != probs.len() {
            return Err(Error::InvalidParameter(
                "domain values and probabilities disagree".into(),
            ));
        }
        let sum: Rational = probs.iter().cloned().sum();
        if !sum.is_one() {
            return Err(Error::InvalidParameter("domain probabilities must sum to 1".into()));
        }
        let den = probs.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let weights = probs
            .iter()
            .map(|p| (p.numer() * (&den / p.denom())).to_u64())
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| Error::InvalidParameter("probability denominators too large".into()))?;
        let total = den
            .to_u64()
            .ok_or_else(|| Error::InvalidParameter("probability denominators too large".into()))?;
        Ok(Domain { values, weights, total })
    }

    pub fn uniform(values: Vec<i64>) -> Self {
        let n = values.len() as u64;
        Domain {
            values,
            weights: vec![1; n as usize],
            total: n,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let mut r = rng.gen_range(0..self.total);
        for (v, &w) in self.values.iter().zip(&self.weights) {
            if r < w {
                return *v;
            }
            r -= w;
        }
        unreachable!("weights sum to total")
    }
}

/// Independent random variables. Initial sampling and every resampling use
/// the same per-variable distribution.
#[derive(Debug, Clone)]
pub struct VariableFramework {
    domains: Vec<Domain>,
    seed: u64,
}

impl VariableFramework {
    pub fn new(domains: Vec<Domain>, seed: u64) -> Self {
        VariableFramework { domains, seed }
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domain(&self, var: usize) -> &Domain {
        &self.domains[var]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub type PredicateFn = dyn Fn(&[i64]) -> bool + Send + Sync;

/// Condition under which a bad event occurs.
#[derive(Clone)]
pub enum Predicate {
    /// `sum c * X_v == 0`
    LinearZero(Vec<(usize, i64)>),
    /// `sum c * X_v == 0 (mod modulus)`
    LinearZeroMod { terms: Vec<(usize, i64)>, modulus: i64 },
    /// Conjunction.
    All(Vec<Predicate>),
    /// Arbitrary test on the full assignment.
    Custom(Arc<PredicateFn>),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::LinearZero(t) => f.debug_tuple("LinearZero").field(t).finish(),
            Predicate::LinearZeroMod { terms, modulus } => f
                .debug_struct("LinearZeroMod")
                .field("terms", terms)
                .field("modulus", modulus)
                .finish(),
            Predicate::All(p) => f.debug_tuple("All").field(p).finish(),
            Predicate::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Predicate {
    pub fn custom(f: impl Fn(&[i64]) -> bool + Send + Sync + 'static) -> Self {
        Predicate::Custom(Arc::new(f))
    }

    pub fn holds(&self, values: &[i64]) -> bool {
        match self {
            Predicate::LinearZero(terms) => terms.iter().map(|&(v, c)| c * values[v]).sum::<i64>() == 0,
            Predicate::LinearZeroMod { terms, modulus } => {
                terms
                    .iter()
                    .map(|&(v, c)| c * values[v])
                    .sum::<i64>()
                    .rem_euclid(*modulus)
                    == 0
            }
            Predicate::All(parts) => parts.iter().all(|p| p.holds(values)),
            Predicate::Custom(f) => f(values),
        }
    }

    fn variables(&self, out: &mut Vec<usize>) {
        match self {
            Predicate::LinearZero(t) | Predicate::LinearZeroMod { terms: t, .. } => {
                out.extend(t.iter().map(|&(v, _)| v))
            }
            Predicate::All(parts) => parts.iter().for_each(|p| p.variables(out)),
            Predicate::Custom(_) => {}
        }
    }

    /// `Some(true)` if the predicate holds under every assignment,
    /// `Some(false)` if some assignment falsifies it, `None` if undecided.
    fn constant_true(&self, fw: &VariableFramework, scope: &[usize]) -> Option<bool> {
        match self {
            Predicate::LinearZero(terms) => {
                let varies = terms.iter().any(|&(v, c)| c != 0 && fw.domain(v).values().len() > 1);
                if varies {
                    return Some(false);
                }
                let value: i64 = terms.iter().map(|&(v, c)| c * fw.domain(v).values()[0]).sum();
                Some(value == 0)
            }
            Predicate::LinearZeroMod { terms, modulus } => {
                let varies = terms.iter().any(|&(v, c)| {
                    let vals = fw.domain(v).values();
                    vals.iter().any(|&a| (c * (a - vals[0])).rem_euclid(*modulus) != 0)
                });
                if varies {
                    return Some(false);
                }
                let value: i64 = terms.iter().map(|&(v, c)| c * fw.domain(v).values()[0]).sum();
                Some(value.rem_euclid(*modulus) == 0)
            }
            Predicate::All(parts) => {
                let mut all_true = true;
                for p in parts {
                    match p.constant_true(fw, scope) {
                        Some(false) => return Some(false),
                        None => all_true = false,
                        Some(true) => {}
                    }
                }
                all_true.then_some(true)
            }
            Predicate::Custom(f) => {
                const LIMIT: u64 = 1 << 16;
                let mut space = 1u64;
                for &v in scope {
                    space = space.saturating_mul(fw.domain(v).values().len() as u64);
                }
                if space > LIMIT {
                    return None;
                }
                let mut values: Vec<i64> = (0..fw.len()).map(|v| fw.domain(v).values()[0]).collect();
                for mut code in 0..space {
                    for &v in scope {
                        let vals = fw.domain(v).values();
                        values[v] = vals[(code % vals.len() as u64) as usize];
                        code /= vals.len() as u64;
                    }
                    if !f(&values) {
                        return Some(false);
                    }
                }
                Some(true)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Event {
    pub label: String,
    pub scope: Vec<usize>,
    pub predicate: Predicate,
}

impl Event {
    /// Scope taken from the variables the predicate mentions.
    pub fn new(label: impl Into<String>, predicate: Predicate) -> Self {
        let mut scope = Vec::new();
        predicate.variables(&mut scope);
        scope.sort_unstable();
        scope.dedup();
        Event {
            label: label.into(),
            scope,
            predicate,
        }
    }

    pub fn with_scope(label: impl Into<String>, mut scope: Vec<usize>, predicate: Predicate) -> Self {
        scope.sort_unstable();
        scope.dedup();
        Event {
            label: label.into(),
            scope,
            predicate,
        }
    }
}

/// Admitted events in a fixed order; position defines "least indexed".
#[derive(Debug, Clone)]
pub struct EventTable {
    events: Vec<Event>,
}

impl EventTable {
    pub fn new(events: Vec<Event>, fw: &VariableFramework) -> Result<Self> {
        for e in &events {
            if e.scope.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "event `{}` has an empty scope",
                    e.label
                )));
            }
            if let Some(&v) = e.scope.iter().find(|&&v| v >= fw.len()) {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    limit: fw.len(),
                });
            }
            if e.predicate.constant_true(fw, &e.scope) == Some(true) {
                return Err(Error::UnavoidableEvent(e.label.clone()));
            }
        }
        Ok(EventTable { events })
    }

    pub fn empty() -> Self {
        EventTable { events: Vec::new() }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}
