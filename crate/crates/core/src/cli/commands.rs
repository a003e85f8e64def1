use std::fs;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::args::{
    BoundsArgs, CodeArgs, Command, ConstructArgs, EnumerateArgs, ExperimentArgs, ExportArgs, VerifyArgs,
};
use super::{artifact, write_file, CliError, CliResult, Globals};
use super::{EXIT_CHECK_FAILED, EXIT_NON_TERMINATION, EXIT_OK, TOOL_VERSION};
use crate::bounds::{
    corollary1_check, corollary1_min_m, corollary1_min_z, corollary4_bound, is_full_c4_set, theorem1_feasibility,
    BoundReport, DeltaSource, Girth6Check, ShiftCap,
};
use crate::code::{
    assemble_protograph, assemble_qc, export_alist, export_instance_json_tagged, import_instance_json, parse_alist,
    BaseCode, CodeInstance, CouplingScheme, SparseMatrix,
};
use crate::error::Error;
use crate::experiment::{estimate_baseline, run_experiment, sweep, ExperimentConfig, Vary, Verdict};
use crate::mt::{self, MtOptions};
use crate::probability::{activation_report_csv, joint_probs};
use crate::rational;
use crate::walks::{
    c4_delta_formula, candidates_to_jsonl, dependency_degree, enumerate_cycles, girth, harmful_weight, is_active_lift,
    is_active_partition, CandidateSet, WalkMode,
};

pub(super) fn dispatch(g: &Globals, command: Command) -> CliResult<i32> {
    match command {
        Command::Bounds(a) => bounds(g, a),
        Command::Enumerate(a) => enumerate(g, a),
        Command::Construct(a) => construct(g, a),
        Command::Verify(a) => verify(g, a),
        Command::Experiment(a) => experiment(g, a),
        Command::Export(a) => export(g, a),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn parse_enum<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> CliResult<T> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|_| usage(format!("unknown {what} `{s}`")))
}

/// `c4`, `C6` or `8` to a cycle length.
fn parse_lengths(items: &[String]) -> CliResult<Vec<usize>> {
    items
        .iter()
        .map(|s| {
            let t = s.trim().trim_start_matches(['c', 'C']);
            match t.parse::<usize>() {
                Ok(n) if n >= 4 && n % 2 == 0 => Ok(n),
                _ => Err(usage(format!("bad cycle class `{s}` (expected c4, c6, ...)"))),
            }
        })
        .collect()
}

fn default_targets(t: &mut Option<Vec<String>>) {
    if t.is_none() {
        *t = Some(vec!["c4".into()]);
    }
}

fn walk_mode(s: &Option<String>) -> CliResult<WalkMode> {
    s.as_deref()
        .map_or(Ok(WalkMode::Simple), |s| parse_enum(s, "walk mode"))
}

fn enumerate_all(base: &BaseCode, lengths: &[usize], mode: WalkMode) -> CliResult<CandidateSet> {
    let mut set = CandidateSet::from_candidates(Vec::new());
    for &l in lengths {
        set = set.union(&enumerate_cycles(base, l, mode)?);
    }
    Ok(set)
}

fn base_of(code: &CodeArgs) -> CliResult<BaseCode> {
    Ok(BaseCode::all_ones(
        required(code.gamma, "gamma")?,
        required(code.kappa, "kappa")?,
    )?)
}

/// Pattern and probabilities from `--pattern/--probs` or `--m`.
fn pattern_of(code: &CodeArgs) -> CliResult<(Vec<i64>, Vec<rational::Rational>)> {
    let pattern: Vec<i64> = match (&code.pattern, code.memory) {
        (Some(p), _) => p.clone(),
        (None, Some(m)) => (0..=m as i64).collect(),
        (None, None) => return Err(usage("missing required flag --m (or --pattern)")),
    };
    let probs = match &code.probs {
        Some(p) => p.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>()?,
        None => vec![rational::ratio(1, pattern.len() as i64); pattern.len()],
    };
    Ok((pattern, probs))
}

fn scheme_of(code: &CodeArgs, default_l: impl Fn(usize) -> usize) -> CliResult<CouplingScheme> {
    let (pattern, probs) = pattern_of(code)?;
    let memory = pattern.iter().copied().max().unwrap_or(0).max(0) as usize;
    let l = code.coupling_length.unwrap_or_else(|| default_l(memory));
    Ok(CouplingScheme::new(
        pattern,
        probs,
        l,
        code.lifting_degree.unwrap_or(1),
    )?)
}

fn uniform_memory(code: &CodeArgs) -> Option<u64> {
    match (&code.pattern, &code.probs) {
        (None, None) => code.memory.map(|m| m as u64),
        _ => None,
    }
}

/// Enumerated clique-LLL report, falling back to the observed dependency
/// degree when the closed form does not apply.
fn enumerated_report(
    base: &BaseCode,
    set: &CandidateSet,
    scheme: &CouplingScheme,
    source: DeltaSource,
) -> crate::Result<BoundReport> {
    let source = if source == DeltaSource::ClosedForm && !is_full_c4_set(base, set) {
        DeltaSource::Observed
    } else {
        source
    };
    let probs = joint_probs(set, scheme)?;
    theorem1_feasibility(base, set, &probs, source)
}

#[derive(Serialize)]
struct BoundsResult {
    gamma: usize,
    kappa: usize,
    delta_formula: usize,
    girth6: Option<Girth6Check>,
    min_z: Option<u64>,
    min_m: Option<u64>,
    enumerated: Option<BoundReport>,
    enumerated_note: Option<String>,
    shift_caps: Vec<(usize, ShiftCap)>,
}

fn bounds(g: &Globals, args: BoundsArgs) -> CliResult<i32> {
    let mut a = g.resolve(&args)?;
    default_targets(&mut a.targets);
    let base = base_of(&a.code)?;
    let (gamma, kappa) = (base.gamma(), base.kappa());
    if gamma < 2 || kappa < 2 {
        return Err(usage("gamma and kappa must be at least 2"));
    }
    pattern_of(&a.code)?;
    let source: DeltaSource = a
        .delta_source
        .as_deref()
        .map_or(Ok(DeltaSource::ClosedForm), |s| parse_enum(s, "delta source"))?;
    let m = uniform_memory(&a.code);
    let z = a.code.lifting_degree;
    let girth6 = match (m, z) {
        (Some(m), Some(z)) => Some(corollary1_check(gamma, kappa, m, z)?),
        _ => None,
    };
    let min_z = m.map(|m| corollary1_min_z(gamma, kappa, m)).transpose()?;
    let min_m = match (m, z) {
        (Some(_), Some(z)) => Some(corollary1_min_m(gamma, kappa, z)?),
        _ => None,
    };
    let (enumerated, enumerated_note) = match z {
        Some(_) => {
            let scheme = scheme_of(&a.code, |m| m + 1)?;
            let lengths = parse_lengths(a.targets.as_deref().unwrap_or_default())?;
            let set = enumerate_all(&base, &lengths, WalkMode::Simple)?;
            match enumerated_report(&base, &set, &scheme, source) {
                Ok(r) => (Some(r), None),
                Err(Error::UnavoidableEvent(k)) => {
                    (None, Some(format!("candidate {k} can never be avoided; infeasible")))
                }
                Err(e) => return Err(e.into()),
            }
        }
        None => (None, None),
    };
    let shift_caps = [6, 8]
        .into_iter()
        .map(|k| Ok((k, corollary4_bound(gamma, kappa, k)?)))
        .collect::<crate::Result<Vec<_>>>()?;
    let result = BoundsResult {
        gamma,
        kappa,
        delta_formula: c4_delta_formula(gamma, kappa),
        girth6,
        min_z,
        min_m,
        enumerated,
        enumerated_note,
        shift_caps,
    };
    let text = artifact("bounds", None, &a, &result);
    if g.out_dir.is_some() {
        g.write("bounds.json", &text)?;
    }
    if g.json {
        print!("{text}");
        return Ok(EXIT_OK);
    }
    println!("base {gamma}x{kappa}, Delta (closed form) = {}", result.delta_formula);
    if let Some(c) = &result.girth6 {
        println!(
            "m = {}, Z = {}: P = {} ({:.6}), threshold {:.6} (branch {:?}), feasible = {}",
            c.memory,
            c.lifting_degree,
            rational::format(&c.lhs),
            rational::to_f64(&c.lhs),
            c.threshold,
            c.branch,
            c.feasible
        );
    }
    if let Some(v) = result.min_z {
        println!("min_Z = {v}");
    }
    if let Some(v) = result.min_m {
        println!("min_m = {v}");
    }
    if let Some(r) = &result.enumerated {
        println!(
            "enumerated: k = {}, Delta = {} ({:?}), W = {}, |H| = {}, p_max = {}, feasible = {}",
            r.k,
            r.delta,
            r.delta_source,
            r.w,
            r.h_size,
            rational::format(&r.p_max),
            r.feasible
        );
        if let Some(b) = &r.resample_bound {
            println!(
                "expected resamples <= {} ({:.4})",
                rational::format(b),
                rational::to_f64(b)
            );
        }
    }
    if let Some(n) = &result.enumerated_note {
        println!("{n}");
    }
    for (k, c) in &result.shift_caps {
        println!("shift factor for {k}-cycles: {:.4}", c.value);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EnumerateSummary {
    gamma: usize,
    kappa: usize,
    lengths: Vec<usize>,
    walk_mode: WalkMode,
    candidates: usize,
    per_length: Vec<(usize, usize)>,
    unavoidable: usize,
    dependency_max_degree: usize,
    dependency_edges: usize,
    harmful_weight: usize,
}

fn enumerate(g: &Globals, args: EnumerateArgs) -> CliResult<i32> {
    let mut a = g.resolve(&args)?;
    default_targets(&mut a.targets);
    let base = base_of(&a.code)?;
    let mode = walk_mode(&a.walk_mode)?;
    let lengths = parse_lengths(a.targets.as_deref().unwrap_or_default())?;
    let set = enumerate_all(&base, &lengths, mode)?;
    let dep = dependency_degree(&set);
    let summary = EnumerateSummary {
        gamma: base.gamma(),
        kappa: base.kappa(),
        per_length: lengths
            .iter()
            .map(|&l| (l, set.candidates().iter().filter(|c| c.length() == l).count()))
            .collect(),
        lengths,
        walk_mode: mode,
        candidates: set.len(),
        unavoidable: set.candidates().iter().filter(|c| !c.avoidable()).count(),
        dependency_max_degree: dep.max_degree,
        dependency_edges: dep.edge_count,
        harmful_weight: harmful_weight(&base, &set).max,
    };
    let csv = if a.code.memory.is_some() || a.code.pattern.is_some() {
        Some(activation_report_csv(&set, &scheme_of(&a.code, |m| m + 1)?)?)
    } else {
        None
    };
    let text = artifact("enumerate", None, &a, &summary);
    if g.out_dir.is_some() {
        g.write("candidates.jsonl", &candidates_to_jsonl(&set))?;
        g.write("enumerate.json", &text)?;
        if let Some(csv) = &csv {
            g.write("activation.csv", csv)?;
        }
    }
    if g.json {
        print!("{text}");
    } else if g.out_dir.is_none() {
        print!("{}", candidates_to_jsonl(&set));
        eprintln!("{} candidates", summary.candidates);
    } else {
        println!(
            "{} candidates, Delta = {}, W = {}",
            summary.candidates, summary.dependency_max_degree, summary.harmful_weight
        );
    }
    Ok(EXIT_OK)
}

/// Candidates active in the lifted graph: both conditions hold.
fn active_keys(inst: &CodeInstance, set: &CandidateSet) -> crate::Result<Vec<String>> {
    let z = inst.scheme().lifting_degree();
    let mut out = Vec::new();
    for c in set.candidates() {
        if is_active_partition(c, inst.partition())? && is_active_lift(c, inst.lift(), z)? {
            out.push(c.key().to_string());
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ConstructResult {
    terminated: bool,
    total_resamples: u64,
    rows: usize,
    cols: usize,
    girth: Option<usize>,
    active_targets: Vec<String>,
    feasible: Option<bool>,
}

fn construct(g: &Globals, args: ConstructArgs) -> CliResult<i32> {
    let mut a = g.resolve(&args)?;
    default_targets(&mut a.targets);
    let base = base_of(&a.code)?;
    required(a.code.lifting_degree, "Z")?;
    let scheme = scheme_of(&a.code, |m| 2 * (m + 1))?;
    a.code.coupling_length = Some(scheme.coupling_length());
    let seed = g.seed_or("seed", 0);
    let mode = a.mode.clone().unwrap_or_else(|| "two-stage".into());
    if mode != "two-stage" && mode != "joint" {
        return Err(usage(format!("unknown mode `{mode}` (two-stage or joint)")));
    }
    a.mode = Some(mode.clone());
    let walk = walk_mode(&a.walk_mode)?;
    let lengths = parse_lengths(a.targets.as_deref().unwrap_or_default())?;
    let set = enumerate_all(&base, &lengths, walk)?;

    let feasible = match enumerated_report(&base, &set, &scheme, DeltaSource::ClosedForm) {
        Ok(r) => {
            if !r.feasible {
                eprintln!(
                    "warning: LLL condition fails (p_max = {:.6} > {:.6}); resampling may still succeed",
                    r.p_max_f64, r.threshold
                );
            }
            Some(r.feasible)
        }
        Err(_) => None,
    };
    let opts = MtOptions {
        seed,
        max_resamples: a.max_resamples,
    };
    let (inst, trace, terminated, total) = if mode == "joint" {
        let (inst, t) = mt::run_joint(&base, &scheme, &set, opts)?;
        let (done, total) = (t.terminated, t.total_resamples);
        (inst, serde_json::to_value(t).map_err(Error::from)?, done, total)
    } else {
        let (inst, t) = mt::construct_two_stage(&base, &scheme, &set, opts)?;
        let (done, total) = (t.terminated(), t.total_resamples());
        (inst, serde_json::to_value(t).map_err(Error::from)?, done, total)
    };
    let config = json!({ "args": &a, "seed": seed });
    let trace_doc = artifact(
        "construct",
        Some(seed),
        &config,
        &json!({ "trace": trace, "inner_order": mt::INNER_ORDER }),
    );
    g.write("trace.json", &trace_doc)?;
    if !terminated {
        eprintln!("resample cap reached after {total} resamples; partial trace written");
        return Ok(EXIT_NON_TERMINATION);
    }
    let h = assemble_qc(&inst)?;
    let result = ConstructResult {
        terminated,
        total_resamples: total,
        rows: h.num_rows(),
        cols: h.num_cols(),
        girth: girth(&h),
        active_targets: active_keys(&inst, &set)?,
        feasible,
    };
    g.write("instance.json", &export_instance_json_tagged(&inst, Some(TOOL_VERSION)))?;
    g.write("code.alist", &export_alist(&h))?;
    let summary = artifact("construct", Some(seed), &config, &result);
    g.write("construct.json", &summary)?;
    if g.json {
        print!("{summary}");
    } else {
        println!(
            "{}x{} parity-check matrix, {} resamples, girth {}, {} targeted candidates active",
            result.rows,
            result.cols,
            total,
            result.girth.map_or("infinite".to_string(), |g| g.to_string()),
            result.active_targets.len()
        );
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyResult {
    verdict: &'static str,
    targets: usize,
    active: Vec<String>,
    girth: Option<usize>,
    /// With Z = 1 the lift condition holds for every candidate.
    lift_condition_trivial: bool,
}

fn verify(g: &Globals, args: VerifyArgs) -> CliResult<i32> {
    let mut a = g.resolve(&args)?;
    default_targets(&mut a.targets);
    let path = a.input.clone().ok_or_else(|| usage("missing required flag --in"))?;
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let inst = import_instance_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let lengths = parse_lengths(a.targets.as_deref().unwrap_or_default())?;
    let set = enumerate_all(inst.base(), &lengths, walk_mode(&a.walk_mode)?)?;
    let active = active_keys(&inst, &set)?;
    let h = assemble_qc(&inst)?;
    let result = VerifyResult {
        verdict: if active.is_empty() { "PASS" } else { "FAIL" },
        targets: set.len(),
        girth: girth(&h),
        lift_condition_trivial: inst.scheme().lifting_degree() == 1,
        active,
    };
    let doc = artifact("verify", inst.seed(), &a, &result);
    if g.out_dir.is_some() {
        g.write("verify.json", &doc)?;
    }
    if g.json {
        print!("{doc}");
    } else {
        println!("{}", result.verdict);
        for k in &result.active {
            println!("active: {k}");
        }
        println!(
            "girth {}",
            result.girth.map_or("infinite".to_string(), |g| g.to_string())
        );
    }
    Ok(if result.active.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn parse_range<T: std::str::FromStr + Copy + Into<u64> + TryFrom<u64>>(s: &str) -> CliResult<Vec<T>> {
    let bad = || usage(format!("bad sweep range `{s}`"));
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: T = lo.trim().parse().map_err(|_| bad())?;
        let hi: T = hi.trim().parse().map_err(|_| bad())?;
        return (lo.into()..=hi.into())
            .map(|v| T::try_from(v).map_err(|_| bad()))
            .collect();
    }
    s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
}

fn parse_sweep(s: &str) -> CliResult<Vary> {
    let (name, range) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("bad sweep `{s}` (expected name=range)")))?;
    let to_usize = |v: Vec<u64>| v.into_iter().map(|x| x as usize).collect();
    match name.trim() {
        "m" | "memory" => Ok(Vary::Memory(to_usize(parse_range::<u64>(range)?))),
        "Z" | "z" => Ok(Vary::LiftingDegree(parse_range::<u64>(range)?)),
        "gamma" => Ok(Vary::Gamma(to_usize(parse_range::<u64>(range)?))),
        other => Err(usage(format!("cannot sweep `{other}` (m, Z or gamma)"))),
    }
}

fn experiment_config(g: &Globals, a: &ExperimentArgs) -> CliResult<ExperimentConfig> {
    let mut m: Map<String, Value> = g.config.clone().unwrap_or_default();
    let mut set = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    let c = &a.code;
    if let Some(v) = c.gamma {
        set("gamma", json!(v));
    }
    if let Some(v) = c.kappa {
        set("kappa", json!(v));
    }
    if let Some(v) = c.memory {
        set("memory", json!(v));
    }
    if let Some(v) = c.lifting_degree {
        set("Z", json!(v));
    }
    if let Some(v) = c.coupling_length {
        set("L", json!(v));
    }
    if let Some(v) = &c.pattern {
        set("pattern", json!(v));
    }
    if let Some(v) = &c.probs {
        set("probs", json!(v));
    }
    if let Some(v) = a.trials {
        set("trials", json!(v));
    }
    if let Some(v) = &a.mode {
        set("mode", json!(v));
    }
    if let Some(v) = &a.eliminate {
        set("eliminate", json!({ "lengths": parse_lengths(v)? }));
    }
    if let Some(v) = &a.observe {
        set("observe", json!({ "lengths": parse_lengths(v)? }));
    }
    if let Some(v) = &a.delta_source {
        set("delta_source", json!(v));
    }
    if let Some(v) = a.max_resamples {
        set("max_resamples", json!(v));
    }
    if let Some(v) = g.seed {
        set("seed", json!(v));
    }
    if a.code.memory.is_some() && a.code.pattern.is_none() {
        m.remove("pattern");
        m.remove("probs");
    }
    m.remove("m");
    let cfg: ExperimentConfig =
        serde_json::from_value(Value::Object(m)).map_err(|e| usage(format!("experiment config: {e}")))?;
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn experiment(g: &Globals, a: ExperimentArgs) -> CliResult<i32> {
    let cfg = experiment_config(g, &a)?;
    if a.baseline {
        let stats = estimate_baseline(&cfg)?;
        let doc = artifact("experiment-baseline", Some(cfg.seed), &cfg, &stats);
        if g.out_dir.is_some() {
            g.write("baseline.json", &doc)?;
        }
        if g.json {
            print!("{doc}");
        } else {
            for o in &stats.observables {
                println!(
                    "{}: exact {:.6}, sampled {:.6} +- {:.6}",
                    o.key, o.exact_f64, o.empirical, o.std_error
                );
            }
        }
        return Ok(if stats.all_within_4_sigma {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        });
    }
    if let Some(s) = &a.sweep {
        let vary = parse_sweep(s)?;
        let csv = sweep(&cfg, &vary)?;
        if g.out_dir.is_some() {
            g.write("sweep.csv", &csv)?;
            let doc = artifact(
                "experiment-sweep",
                Some(cfg.seed),
                &json!({ "base": &cfg, "vary": &vary }),
                &json!({ "rows": csv.lines().count().saturating_sub(1) }),
            );
            g.write("sweep.json", &doc)?;
        }
        if g.json || g.out_dir.is_none() {
            print!("{csv}");
        }
        return Ok(EXIT_OK);
    }
    let report = run_experiment(&cfg)?;
    let doc = artifact("experiment", Some(cfg.seed), &cfg, &report);
    if g.out_dir.is_some() {
        g.write("experiment.json", &doc)?;
        g.write("observables.csv", &observables_csv(&report.shift)?)?;
    }
    let s = &report.shift;
    if g.json {
        print!("{doc}");
    } else {
        println!(
            "{} trials ({} failed), resamples mean {:.4} max {}",
            s.requested, s.failed, s.resamples.mean, s.resamples.max
        );
        if let Some(b) = &report.resample_check.bound_f64 {
            println!(
                "resample bound {:.4} (+{:.4} allowance): {:?}",
                b, report.resample_check.allowance, report.resample_check.verdict
            );
        }
        if let (Some(r), Some(u)) = (s.max_ratio, s.max_ratio_upper) {
            println!(
                "max ratio P_MT/P_Omega {r:.4} (95% upper {u:.4}), symmetric precondition {}",
                s.symmetric_precondition
            );
        }
        if let Some(ok) = s.caps_respected {
            println!("caps respected: {ok}");
        }
    }
    let failed_check = report.resample_check.verdict == Verdict::Fail || s.caps_respected == Some(false);
    Ok(if failed_check {
        EXIT_CHECK_FAILED
    } else if s.failed > 0 {
        EXIT_NON_TERMINATION
    } else {
        EXIT_OK
    })
}

fn observables_csv(s: &crate::experiment::ExperimentStats) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Lib(Error::Io(e.to_string()));
    w.write_record([
        "key",
        "p_omega",
        "hits",
        "p_mt",
        "wilson_lo",
        "wilson_hi",
        "ratio",
        "ratio_upper",
        "neighbors",
        "cap",
        "within_cap",
    ])
    .map_err(io)?;
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for o in &s.observables {
        w.write_record([
            o.key.clone(),
            rational::format(&o.p_omega),
            o.hits.to_string(),
            o.p_mt.to_string(),
            o.wilson.0.to_string(),
            o.wilson.1.to_string(),
            opt(o.ratio),
            opt(o.ratio_interval.map(|r| r.1)),
            o.eliminated_neighbors.to_string(),
            o.cap.to_string(),
            o.within_cap.map(|b| b.to_string()).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Lib(Error::Io(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn dense_text(h: &SparseMatrix) -> String {
    let mut out = String::new();
    for row in h.to_dense() {
        out.extend(row.iter().map(|&v| if v == 0 { '0' } else { '1' }));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ExportResult {
    rows: usize,
    cols: usize,
    ones: usize,
    written: Vec<String>,
}

fn export(g: &Globals, a: ExportArgs) -> CliResult<i32> {
    let path = a.input.clone().ok_or_else(|| usage("missing required flag --in"))?;
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let bad = |e: Error| usage(format!("{}: {e}", path.display()));
    let (h, proto, seed) = if text.trim_start().starts_with('{') {
        let inst = import_instance_json(&text).map_err(bad)?;
        let proto = assemble_protograph(inst.base(), inst.partition(), inst.scheme())?;
        (assemble_qc(&inst)?, Some(proto), inst.seed())
    } else {
        (parse_alist(&text).map_err(bad)?, None, None)
    };
    let resolve = |p: &std::path::PathBuf| match &g.out_dir {
        Some(d) if p.is_relative() => d.join(p),
        _ => p.clone(),
    };
    let mut written = Vec::new();
    if let Some(p) = &a.alist {
        let p = resolve(p);
        write_file(&p, &export_alist(&h))?;
        written.push(p.display().to_string());
    }
    if let Some(p) = &a.dense {
        let p = resolve(p);
        write_file(&p, &dense_text(&h))?;
        written.push(p.display().to_string());
    }
    if let Some(p) = &a.protograph {
        let proto = proto
            .as_ref()
            .ok_or_else(|| usage("--protograph needs an instance JSON input"))?;
        let p = resolve(p);
        write_file(&p, &export_alist(proto))?;
        written.push(p.display().to_string());
    }
    let result = ExportResult {
        rows: h.num_rows(),
        cols: h.num_cols(),
        ones: h.ones(),
        written,
    };
    if g.json {
        let config = json!({ "in": path.display().to_string() });
        print!("{}", artifact("export", seed, &config, &result));
    } else if result.written.is_empty() {
        print!("{}", export_alist(&h));
    } else {
        println!("{}x{} matrix with {} ones", result.rows, result.cols, result.ones);
    }
    Ok(EXIT_OK)
}
