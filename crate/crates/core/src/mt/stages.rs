use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::engine::{run_mt, MTTrace};
use super::framework::{Domain, Event, EventTable, Predicate, VariableFramework};
use super::rng;
use crate::bounds::{theorem1_feasibility, BoundReport, DeltaSource};
use crate::code::{Assignment, BaseCode, CodeInstance, CouplingScheme, Stage};
use crate::error::{Error, Result};
use crate::probability::{lift_prob_exact, spreading_prob_exact, ActivationProbability};
use crate::rational::Rational;
use crate::walks::{is_active_partition, CandidateSet, WalkCandidate};

/// Cap used when no explicit limit is given and the LLL condition fails.
pub const FALLBACK_MAX_RESAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MtOptions {
    pub seed: u64,
    /// `None` selects [`default_max_resamples`] for the stage's events.
    pub max_resamples: Option<u64>,
}

impl MtOptions {
    pub fn seeded(seed: u64) -> Self {
        MtOptions {
            seed,
            max_resamples: None,
        }
    }
}

/// `1000 * max(1, ceil(bound))` when the report is feasible with a finite
/// resample bound, otherwise [`FALLBACK_MAX_RESAMPLES`].
pub fn default_max_resamples(report: Option<&BoundReport>) -> u64 {
    match report {
        Some(r) if r.feasible => match &r.resample_bound {
            Some(b) => 1000 * b.ceil().to_integer().to_u64().unwrap_or(1).max(1),
            None => FALLBACK_MAX_RESAMPLES,
        },
        _ => FALLBACK_MAX_RESAMPLES,
    }
}

fn stage_report(base: &BaseCode, targets: &CandidateSet, probs: Vec<Rational>) -> Option<BoundReport> {
    let probs: Vec<ActivationProbability> = probs
        .into_iter()
        .map(|p| ActivationProbability {
            spread: p.clone(),
            lift: Rational::one(),
            joint: p,
            lift_bound: Rational::one(),
        })
        .collect();
    theorem1_feasibility(base, targets, &probs, DeltaSource::Observed).ok()
}

fn stage_cap(base: &BaseCode, targets: &CandidateSet, probs: Vec<Rational>) -> u64 {
    default_max_resamples(stage_report(base, targets, probs).as_ref())
}

fn terms(base: &BaseCode, c: &WalkCandidate, offset: usize) -> Result<Vec<(usize, i64)>> {
    c.coeffs()
        .iter()
        .map(|(&(i, j), &k)| {
            base.edge_index(i, j)
                .map(|v| (v + offset, k))
                .ok_or(Error::UncoveredEdge(i, j))
        })
        .collect()
}

fn pattern_domain(scheme: &CouplingScheme) -> Result<Domain> {
    Domain::new(scheme.pattern().to_vec(), scheme.probs())
}

fn lift_domain(scheme: &CouplingScheme) -> Domain {
    Domain::uniform((0..scheme.lifting_degree() as i64).collect())
}

fn modulus(scheme: &CouplingScheme) -> i64 {
    scheme.lifting_degree() as i64
}

fn reject_unavoidable(targets: &CandidateSet) -> Result<()> {
    match targets.candidates().iter().find(|c| !c.avoidable()) {
        Some(c) => Err(Error::UnavoidableEvent(c.key().to_string())),
        None => Ok(()),
    }
}

/// Moser-Tardos over the partition matrix: afterwards no target satisfies
/// the spreading condition.
pub fn run_stage_partition(
    base: &BaseCode,
    scheme: &CouplingScheme,
    targets: &CandidateSet,
    opts: MtOptions,
) -> Result<(Assignment, MTTrace)> {
    reject_unavoidable(targets)?;
    let fw = VariableFramework::new(vec![pattern_domain(scheme)?; base.edge_count()], opts.seed);
    let events = targets
        .candidates()
        .iter()
        .map(|c| {
            Ok(Event::new(
                c.key().to_string(),
                Predicate::LinearZero(terms(base, c, 0)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = EventTable::new(events, &fw).map_err(|e| match e {
        Error::UnavoidableEvent(label) => Error::UnavoidableEvent(format!(
            "{label} (edge-spreading alone cannot avoid it under this pattern; use joint mode)"
        )),
        other => other,
    })?;
    let cap = match opts.max_resamples {
        Some(cap) => cap,
        None => {
            let probs = targets
                .candidates()
                .iter()
                .map(|c| spreading_prob_exact(c, scheme))
                .collect::<Result<Vec<_>>>()?;
            stage_cap(base, targets, probs)
        }
    };
    let (values, trace) = run_mt(&fw, &table, Some(cap));
    Ok((Assignment::from_edge_values(Stage::Partition, base, &values)?, trace))
}

/// Moser-Tardos over the lifting matrix for the targets still active in
/// the protograph under `partition`.
pub fn run_stage_lift(
    base: &BaseCode,
    scheme: &CouplingScheme,
    partition: &Assignment,
    targets: &CandidateSet,
    opts: MtOptions,
) -> Result<(Assignment, MTTrace)> {
    let mut survivors = Vec::new();
    for c in targets.candidates() {
        if is_active_partition(c, partition)? {
            survivors.push(c.clone());
        }
    }
    let survivors = CandidateSet::from_candidates(survivors);
    reject_unavoidable(&survivors)?;
    let fw = VariableFramework::new(vec![lift_domain(scheme); base.edge_count()], opts.seed);
    let events = survivors
        .candidates()
        .iter()
        .map(|c| {
            Ok(Event::new(
                c.key().to_string(),
                Predicate::LinearZeroMod {
                    terms: terms(base, c, 0)?,
                    modulus: modulus(scheme),
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = EventTable::new(events, &fw)?;
    let cap = match opts.max_resamples {
        Some(cap) => cap,
        None => {
            let probs = survivors
                .candidates()
                .iter()
                .map(|c| lift_prob_exact(c, scheme.lifting_degree()))
                .collect::<Result<Vec<_>>>()?;
            stage_cap(base, &survivors, probs)
        }
    };
    let (values, trace) = run_mt(&fw, &table, Some(cap));
    Ok((Assignment::from_edge_values(Stage::Lift, base, &values)?, trace))
}

/// Event table of the joint model: variable `e` is the spreading value of
/// base edge `e`, variable `E + e` its shift.
pub fn joint_event_table(
    base: &BaseCode,
    scheme: &CouplingScheme,
    targets: &CandidateSet,
    seed: u64,
) -> Result<(VariableFramework, EventTable)> {
    reject_unavoidable(targets)?;
    let n = base.edge_count();
    let mut domains = vec![pattern_domain(scheme)?; n];
    domains.extend(std::iter::repeat_n(lift_domain(scheme), n));
    let fw = VariableFramework::new(domains, seed);
    let events = targets
        .candidates()
        .iter()
        .map(|c| {
            Ok(Event::new(
                c.key().to_string(),
                Predicate::All(vec![
                    Predicate::LinearZero(terms(base, c, 0)?),
                    Predicate::LinearZeroMod {
                        terms: terms(base, c, n)?,
                        modulus: modulus(scheme),
                    },
                ]),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = EventTable::new(events, &fw)?;
    Ok((fw, table))
}

/// Single Moser-Tardos run over spreading values and shifts together.
pub fn run_joint(
    base: &BaseCode,
    scheme: &CouplingScheme,
    targets: &CandidateSet,
    opts: MtOptions,
) -> Result<(CodeInstance, MTTrace)> {
    let (fw, table) = joint_event_table(base, scheme, targets, opts.seed)?;
    let cap = match opts.max_resamples {
        Some(cap) => cap,
        None => {
            let probs = targets
                .candidates()
                .iter()
                .map(|c| Ok(spreading_prob_exact(c, scheme)? * lift_prob_exact(c, scheme.lifting_degree())?))
                .collect::<Result<Vec<_>>>()?;
            stage_cap(base, targets, probs)
        }
    };
    let (values, trace) = run_mt(&fw, &table, Some(cap));
    let n = base.edge_count();
    let partition = Assignment::from_edge_values(Stage::Partition, base, &values[..n])?;
    let lift = Assignment::from_edge_values(Stage::Lift, base, &values[n..])?;
    let instance = CodeInstance::new(base.clone(), scheme.clone(), partition, lift, Some(opts.seed))?;
    Ok((instance, trace))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoStageTrace {
    pub partition: MTTrace,
    /// Targets still active in the protograph after the partition stage.
    pub survivors: usize,
    pub lift: MTTrace,
}

impl TwoStageTrace {
    /// The construction is complete once the lift stage terminates; the
    /// partition stage only has to thin out the candidates.
    pub fn terminated(&self) -> bool {
        self.lift.terminated
    }

    pub fn total_resamples(&self) -> u64 {
        self.partition.total_resamples + self.lift.total_resamples
    }
}

/// Partition stage, then lift stage on the targets it left active.
///
/// The partition stage is best effort: when its own LLL condition fails and
/// no explicit cap is given, it gets `1000 * k` resamples and whatever
/// assignment it ends on is kept. The lift stage runs on its own stream
/// derived from `opts.seed`.
pub fn construct_two_stage(
    base: &BaseCode,
    scheme: &CouplingScheme,
    targets: &CandidateSet,
    opts: MtOptions,
) -> Result<(CodeInstance, TwoStageTrace)> {
    reject_unavoidable(targets)?;
    let partition_cap = match opts.max_resamples {
        Some(cap) => cap,
        None => {
            let probs = targets
                .candidates()
                .iter()
                .map(|c| spreading_prob_exact(c, scheme))
                .collect::<Result<Vec<_>>>()?;
            match stage_report(base, targets, probs) {
                Some(r) if r.feasible => default_max_resamples(Some(&r)),
                _ => 1000 * targets.len().max(1) as u64,
            }
        }
    };
    let popts = MtOptions {
        seed: opts.seed,
        max_resamples: Some(partition_cap),
    };
    let (partition, ptrace) = run_stage_partition(base, scheme, targets, popts)?;
    let lift_opts = MtOptions {
        seed: rng::trial_seed(opts.seed, 1),
        max_resamples: opts.max_resamples,
    };
    let mut survivors = 0;
    for c in targets.candidates() {
        survivors += is_active_partition(c, &partition)? as usize;
    }
    let (lift, ltrace) = run_stage_lift(base, scheme, &partition, targets, lift_opts)?;
    let instance = CodeInstance::new(base.clone(), scheme.clone(), partition, lift, Some(opts.seed))?;
    Ok((
        instance,
        TwoStageTrace {
            partition: ptrace,
            survivors,
            lift: ltrace,
        },
    ))
}
