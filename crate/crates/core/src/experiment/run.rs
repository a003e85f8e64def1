use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::config::{ConstructionMode, ExperimentConfig};
use super::stats::{wilson_interval, Summary, Z95, Z99_ONE_SIDED};
use crate::bounds::{
    corollary4_bound, is_full_c4_set, shift_bound_asymmetric, shift_bound_symmetric, theorem1_feasibility, BoundReport,
    DeltaSource, ShiftCap,
};
use crate::code::{Assignment, BaseCode, CouplingScheme};
use crate::error::Result;
use crate::mt::{self, rng, Domain, MtOptions};
use crate::probability::{lift_prob_exact, spreading_prob_exact, ActivationProbability};
use crate::rational::{self, Rational};
use crate::walks::{dependency_degree, is_active_lift, is_active_partition, CandidateSet, WalkCandidate};

/// Everything derived from a config before any trial runs.
struct Setup {
    cfg: ExperimentConfig,
    base: BaseCode,
    scheme: CouplingScheme,
    eliminate: CandidateSet,
    observe: CandidateSet,
    elim_probs: Vec<Rational>,
    obs_probs: Vec<Rational>,
    report: Option<BoundReport>,
    delta: u64,
    delta_source: DeltaSource,
    cap: Option<u64>,
}

/// Activation probability of `c` for the events the given mode controls:
/// spreading only in partition-only mode, spreading and lifting otherwise.
fn mode_prob(c: &WalkCandidate, scheme: &CouplingScheme, mode: ConstructionMode) -> Result<Rational> {
    let spread = spreading_prob_exact(c, scheme)?;
    Ok(match mode {
        ConstructionMode::PartitionOnly => spread,
        _ => spread * lift_prob_exact(c, scheme.lifting_degree())?,
    })
}

fn as_activation(p: &Rational) -> ActivationProbability {
    ActivationProbability {
        spread: p.clone(),
        lift: Rational::one(),
        joint: p.clone(),
        lift_bound: Rational::one(),
    }
}

impl Setup {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let base = cfg.base()?;
        let scheme = cfg.scheme()?;
        let eliminate = cfg.eliminate.candidates(&base, cfg.walk_mode)?;
        let observe = cfg.observe.candidates(&base, cfg.walk_mode)?;
        let probs_for = |set: &CandidateSet| {
            set.candidates()
                .par_iter()
                .map(|c| mode_prob(c, &scheme, cfg.mode))
                .collect::<Result<Vec<_>>>()
        };
        let elim_probs = probs_for(&eliminate)?;
        let obs_probs = probs_for(&observe)?;
        let delta_source = match cfg.delta_source {
            DeltaSource::ClosedForm if !is_full_c4_set(&base, &eliminate) => DeltaSource::Observed,
            s => s,
        };
        let report = if eliminate.is_empty() {
            None
        } else {
            let acts: Vec<_> = elim_probs.iter().map(as_activation).collect();
            Some(theorem1_feasibility(&base, &eliminate, &acts, delta_source)?)
        };
        let delta = report
            .as_ref()
            .map_or(dependency_degree(&eliminate).max_degree as u64, |r| r.delta);
        let cap = match (cfg.max_resamples, cfg.mode) {
            (Some(c), _) => Some(c),
            (None, ConstructionMode::TwoStage) => None,
            (None, _) => Some(mt::default_max_resamples(report.as_ref())),
        };
        Ok(Setup {
            cfg: cfg.clone(),
            base,
            scheme,
            eliminate,
            observe,
            elim_probs,
            obs_probs,
            report,
            delta,
            delta_source,
            cap,
        })
    }

    fn is_active(&self, c: &WalkCandidate, partition: &Assignment, lift: Option<&Assignment>) -> Result<bool> {
        Ok(is_active_partition(c, partition)?
            && match lift {
                Some(l) => is_active_lift(c, l, self.scheme.lifting_degree())?,
                None => true,
            })
    }

    fn run_trial(&self, t: u64) -> Result<Trial> {
        let opts = MtOptions {
            seed: rng::trial_seed(self.cfg.seed, t),
            max_resamples: self.cap,
        };
        let (partition, lift, resamples, terminated) = match self.cfg.mode {
            ConstructionMode::PartitionOnly => {
                let (p, tr) = mt::run_stage_partition(&self.base, &self.scheme, &self.eliminate, opts)?;
                (p, None, tr.total_resamples, tr.terminated)
            }
            ConstructionMode::Joint => {
                let (inst, tr) = mt::run_joint(&self.base, &self.scheme, &self.eliminate, opts)?;
                (
                    inst.partition().clone(),
                    Some(inst.lift().clone()),
                    tr.total_resamples,
                    tr.terminated,
                )
            }
            ConstructionMode::TwoStage => {
                let (inst, tr) = mt::construct_two_stage(&self.base, &self.scheme, &self.eliminate, opts)?;
                (
                    inst.partition().clone(),
                    Some(inst.lift().clone()),
                    tr.total_resamples(),
                    tr.terminated(),
                )
            }
        };
        let active = self
            .observe
            .candidates()
            .iter()
            .map(|c| self.is_active(c, &partition, lift.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Trial {
            resamples,
            terminated,
            active,
        })
    }
}

struct Trial {
    resamples: u64,
    terminated: bool,
    active: Vec<bool>,
}

fn run_trials(setup: &Setup) -> Result<Vec<Trial>> {
    (0..setup.cfg.trials)
        .into_par_iter()
        .map(|t| setup.run_trial(t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableStats {
    pub key: String,
    #[serde(serialize_with = "rational::ser_str")]
    pub p_omega: Rational,
    pub p_omega_f64: f64,
    pub hits: u64,
    pub p_mt: f64,
    pub wilson: (f64, f64),
    /// Wilson half-width below 10% of `p_omega`.
    pub precise: bool,
    /// `p_mt / p_omega`; absent when `p_omega = 0`.
    pub ratio: Option<f64>,
    pub ratio_interval: Option<(f64, f64)>,
    /// Standard errors between `p_mt` and `p_omega` under the baseline.
    pub z_score: Option<f64>,
    /// Eliminated candidates sharing a base edge with this one.
    pub eliminated_neighbors: usize,
    pub cap_asymmetric: Option<f64>,
    pub cap_symmetric: f64,
    pub cap_closed_form: Option<ShiftCap>,
    /// Smallest applicable cap.
    pub cap: f64,
    /// Whether the upper ratio limit is within `cap`; only judged when the
    /// symmetric LLL precondition holds.
    pub within_cap: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub config: ExperimentConfig,
    pub requested: u64,
    pub succeeded: u64,
    pub failed: u64,
    pub delta: u64,
    pub delta_source: DeltaSource,
    #[serde(serialize_with = "rational::ser_str")]
    pub p_max_eliminated: Rational,
    /// `e p (Delta + 1) <= 1` for the eliminated events.
    pub symmetric_precondition: bool,
    pub observables: Vec<ObservableStats>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub max_ratio_upper: Option<f64>,
    pub resamples: Summary,
    #[serde(serialize_with = "rational::ser_opt_str")]
    pub resample_bound: Option<Rational>,
    /// Clique-LLL condition for the eliminated events.
    pub condition_held: bool,
    /// All judged observables within their caps; `None` when nothing was judged.
    pub caps_respected: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResampleCheck {
    pub requested: u64,
    pub failed: u64,
    pub resamples: Summary,
    #[serde(serialize_with = "rational::ser_opt_str")]
    pub bound: Option<Rational>,
    pub bound_f64: Option<f64>,
    /// One-sided 99% allowance `2.326 s / sqrt(n)`.
    pub allowance: f64,
    pub feasibility: Option<BoundReport>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub shift: ExperimentStats,
    pub resample_check: ResampleCheck,
}

fn shift_stats(setup: &Setup, trials: &[Trial]) -> Result<ExperimentStats> {
    let requested = setup.cfg.trials;
    let ok: Vec<&Trial> = trials.iter().filter(|t| t.terminated).collect();
    let n = ok.len() as u64;
    let p_max = setup.elim_probs.iter().max().cloned().unwrap_or_else(Rational::zero);
    let p_max_f = rational::to_f64(&p_max);
    let delta = setup.delta;
    let symmetric_precondition = std::f64::consts::E * p_max_f * (delta as f64 + 1.0) <= 1.0;
    let full_c4 = is_full_c4_set(&setup.base, &setup.eliminate);
    let mut observables = Vec::with_capacity(setup.observe.len());
    for (idx, c) in setup.observe.candidates().iter().enumerate() {
        let hits = ok.iter().filter(|t| t.active[idx]).count() as u64;
        let p_omega = setup.obs_probs[idx].clone();
        let po = rational::to_f64(&p_omega);
        let p_mt = if n == 0 { 0.0 } else { hits as f64 / n as f64 };
        let wilson = wilson_interval(hits, n, Z95);
        let ratio = (po > 0.0).then(|| p_mt / po);
        let ratio_interval = (po > 0.0).then(|| (wilson.0 / po, wilson.1 / po));
        let z_score = (po > 0.0 && po < 1.0 && n > 0).then(|| (p_mt - po) / (po * (1.0 - po) / n as f64).sqrt());
        let mut neighbors: Vec<usize> = c
            .edges()
            .flat_map(|(i, j)| setup.eliminate.through_edge(i, j).iter().copied())
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();
        let k = neighbors.len();
        let cap_asymmetric = if k == 0 {
            Some(1.0)
        } else if delta == 0 {
            None
        } else {
            shift_bound_asymmetric(&vec![1.0 / (delta as f64 + 1.0); k]).ok()
        };
        let cap_symmetric = shift_bound_symmetric(p_max_f, delta, k as u64)?.bound;
        let cap_closed_form = if full_c4 && c.is_simple() {
            Some(corollary4_bound(setup.base.gamma(), setup.base.kappa(), c.length())?)
        } else {
            None
        };
        let cap = [cap_asymmetric, Some(cap_symmetric), cap_closed_form.map(|c| c.value)]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
        let within_cap = match (symmetric_precondition, ratio_interval) {
            (true, Some((_, hi))) => Some(hi <= cap),
            _ => None,
        };
        observables.push(ObservableStats {
            key: c.key().to_string(),
            p_omega,
            p_omega_f64: po,
            hits,
            p_mt,
            wilson,
            precise: po > 0.0 && (wilson.1 - wilson.0) / 2.0 < 0.1 * po,
            ratio,
            ratio_interval,
            z_score,
            eliminated_neighbors: k,
            cap_asymmetric,
            cap_symmetric,
            cap_closed_form,
            cap,
            within_cap,
        });
    }
    let ratios: Vec<f64> = observables.iter().filter_map(|o| o.ratio).collect();
    let mean_ratio = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
    let max_ratio = ratios.iter().copied().reduce(f64::max);
    let max_ratio_upper = observables
        .iter()
        .filter_map(|o| o.ratio_interval.map(|r| r.1))
        .reduce(f64::max);
    let judged: Vec<bool> = observables.iter().filter_map(|o| o.within_cap).collect();
    let counts: Vec<u64> = trials.iter().map(|t| t.resamples).collect();
    Ok(ExperimentStats {
        config: setup.cfg.clone(),
        requested,
        succeeded: n,
        failed: requested - n,
        delta,
        delta_source: setup.delta_source,
        p_max_eliminated: p_max,
        symmetric_precondition,
        observables,
        mean_ratio,
        max_ratio,
        max_ratio_upper,
        resamples: Summary::of(&counts),
        resample_bound: setup.report.as_ref().and_then(|r| r.resample_bound.clone()),
        condition_held: setup.report.as_ref().is_none_or(|r| r.feasible),
        caps_respected: (!judged.is_empty()).then(|| judged.iter().all(|&b| b)),
    })
}

fn resample_check_stats(setup: &Setup, trials: &[Trial]) -> ResampleCheck {
    let counts: Vec<u64> = trials.iter().map(|t| t.resamples).collect();
    let failed = trials.iter().filter(|t| !t.terminated).count() as u64;
    let summary = Summary::of(&counts);
    let allowance = if counts.is_empty() {
        0.0
    } else {
        Z99_ONE_SIDED * summary.std_dev / (counts.len() as f64).sqrt()
    };
    let bound = if setup.eliminate.is_empty() {
        Some(Rational::zero())
    } else {
        setup.report.as_ref().and_then(|r| r.resample_bound.clone())
    };
    let feasible = setup.report.as_ref().is_none_or(|r| r.feasible);
    // The bound is stated for one MT run over one event family; the
    // two-stage pipeline is two runs over different families.
    let applicable = feasible && bound.is_some() && setup.cfg.mode != ConstructionMode::TwoStage;
    let verdict = if !applicable {
        Verdict::NotApplicable
    } else {
        let b = rational::to_f64(bound.as_ref().expect("checked"));
        if failed == 0 && summary.mean <= b + allowance {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    ResampleCheck {
        requested: setup.cfg.trials,
        failed,
        bound_f64: bound.as_ref().map(rational::to_f64),
        bound,
        resamples: summary,
        allowance,
        feasibility: setup.report.clone(),
        verdict,
    }
}

/// Runs the configured MT trials once and derives both the shift statistics
/// and the resample statistics from them.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let setup = Setup::new(cfg)?;
    let trials = run_trials(&setup)?;
    Ok(ExperimentReport {
        shift: shift_stats(&setup, &trials)?,
        resample_check: resample_check_stats(&setup, &trials),
    })
}

pub fn estimate_mt_shift(cfg: &ExperimentConfig) -> Result<ExperimentStats> {
    let setup = Setup::new(cfg)?;
    let trials = run_trials(&setup)?;
    shift_stats(&setup, &trials)
}

pub fn verify_theorem2(cfg: &ExperimentConfig) -> Result<ResampleCheck> {
    let setup = Setup::new(cfg)?;
    let trials = run_trials(&setup)?;
    Ok(resample_check_stats(&setup, &trials))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineObservable {
    pub key: String,
    #[serde(serialize_with = "rational::ser_str")]
    pub exact: Rational,
    pub exact_f64: f64,
    pub empirical: f64,
    pub std_error: f64,
    pub within_4_sigma: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineStats {
    pub trials: u64,
    pub observables: Vec<BaselineObservable>,
    pub all_within_4_sigma: bool,
}

/// Exact fresh-sample probabilities of the observables next to their
/// empirical frequencies over `cfg.trials` independent samples.
pub fn estimate_baseline(cfg: &ExperimentConfig) -> Result<BaselineStats> {
    cfg.validate()?;
    let base = cfg.base()?;
    let scheme = cfg.scheme()?;
    let observe = cfg.observe.candidates(&base, cfg.walk_mode)?;
    let exact = observe
        .candidates()
        .iter()
        .map(|c| mode_prob(c, &scheme, cfg.mode))
        .collect::<Result<Vec<_>>>()?;
    let pattern = Domain::new(scheme.pattern().to_vec(), scheme.probs())?;
    let z = scheme.lifting_degree();
    let lifts = Domain::uniform((0..z as i64).collect());
    let n_edges = base.edge_count();
    let mut rng = rng::stream(cfg.seed);
    let mut hits = vec![0u64; observe.len()];
    let terms: Vec<Vec<(usize, i64)>> = observe
        .candidates()
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .map(|(&(i, j), &k)| (base.edge_index(i, j).expect("candidate edge in base"), k))
                .collect()
        })
        .collect();
    let check_lift = cfg.mode != ConstructionMode::PartitionOnly;
    for _ in 0..cfg.trials {
        let p: Vec<i64> = (0..n_edges).map(|_| pattern.sample(&mut rng)).collect();
        let l: Vec<i64> = (0..n_edges).map(|_| lifts.sample(&mut rng)).collect();
        for (h, t) in hits.iter_mut().zip(&terms) {
            let spread = t.iter().map(|&(v, k)| k * p[v]).sum::<i64>() == 0;
            let lifted = !check_lift || t.iter().map(|&(v, k)| k * l[v]).sum::<i64>().rem_euclid(z as i64) == 0;
            *h += (spread && lifted) as u64;
        }
    }
    let n = cfg.trials as f64;
    let observables: Vec<BaselineObservable> = observe
        .candidates()
        .iter()
        .zip(exact)
        .zip(hits)
        .map(|((c, exact), h)| {
            let e = rational::to_f64(&exact);
            let empirical = h as f64 / n;
            let std_error = (e * (1.0 - e) / n).sqrt();
            let within_4_sigma = if std_error == 0.0 {
                empirical == e
            } else {
                (empirical - e).abs() <= 4.0 * std_error
            };
            BaselineObservable {
                key: c.key().to_string(),
                exact_f64: e,
                exact,
                empirical,
                std_error,
                within_4_sigma,
            }
        })
        .collect();
    Ok(BaselineStats {
        trials: cfg.trials,
        all_within_4_sigma: observables.iter().all(|o| o.within_4_sigma),
        observables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::config::CycleClass;

    #[test]
    fn degenerate_baseline_is_certain() {
        let mut cfg = ExperimentConfig::new(3, 3, 0, 1);
        cfg.trials = 200;
        let b = estimate_baseline(&cfg).unwrap();
        assert!(b
            .observables
            .iter()
            .all(|o| o.exact == Rational::one() && o.empirical == 1.0));
        assert!(b.all_within_4_sigma);
    }

    #[test]
    fn baseline_matches_exact_in_joint_mode() {
        let mut cfg = ExperimentConfig::new(3, 3, 1, 4);
        cfg.mode = ConstructionMode::Joint;
        cfg.trials = 100_000;
        cfg.seed = 5;
        let b = estimate_baseline(&cfg).unwrap();
        assert_eq!(b.observables.len(), 6);
        let first = &b.observables[0].exact;
        assert!(b.observables.iter().all(|o| &o.exact == first));
        assert!(b.all_within_4_sigma, "{b:?}");
    }

    #[test]
    fn nothing_eliminated_reproduces_baseline() {
        let mut cfg = ExperimentConfig::new(3, 3, 2, 1);
        cfg.mode = ConstructionMode::PartitionOnly;
        cfg.eliminate = CycleClass::lengths(&[]);
        cfg.trials = 20_000;
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.shift.resamples.max, 0);
        assert_eq!(r.resample_check.verdict, Verdict::Pass);
        for o in &r.shift.observables {
            assert!(o.z_score.unwrap().abs() < 4.0, "{o:?}");
            assert_eq!(o.eliminated_neighbors, 0);
            assert_eq!(o.cap, 1.0);
        }
        assert_eq!(r.shift.succeeded + r.shift.failed, r.shift.requested);
    }

    #[test]
    fn infeasible_resample_check_is_not_applicable() {
        let mut cfg = ExperimentConfig::new(3, 4, 1, 2);
        cfg.mode = ConstructionMode::Joint;
        cfg.trials = 50;
        let t = verify_theorem2(&cfg).unwrap();
        assert!(!t.feasibility.as_ref().unwrap().feasible);
        assert_eq!(t.verdict, Verdict::NotApplicable);
        assert_eq!(t.resamples.count, 50);
    }

    #[test]
    fn deterministic_across_runs() {
        let mut cfg = ExperimentConfig::new(3, 4, 1, 8);
        cfg.trials = 64;
        cfg.seed = 3;
        let a = serde_json::to_string(&run_experiment(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_experiment(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
