// Acceptance suite. Runs each criterion in turn and prints one line per
// criterion; exits nonzero when any of them fails.

mod common;

use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use qcsc::bounds::{corollary1_check, corollary1_min_z, theorem1_feasibility, Branch, DeltaSource};
use qcsc::code::{assemble_qc, Assignment, BaseCode, CodeInstance, CouplingScheme, Stage};
use qcsc::experiment::{
    estimate_mt_shift, verify_theorem2, ConstructionMode, CycleClass, ExperimentConfig, Region, Verdict,
};
use qcsc::mt::{construct_two_stage, MtOptions};
use qcsc::probability::{
    joint_probs, lift_prob_bound, lift_prob_exact, spreading_prob_c4_uniform, spreading_prob_exact,
};
use qcsc::walks::{
    dependency_degree, enumerate_cycles, is_active_lift, is_active_partition, HarmfulStructure, WalkMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::tempdir;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c4_closed_form() -> Outcome {
    let base = BaseCode::all_ones(2, 2).unwrap();
    let c4 = enumerate_cycles(&base, 4, WalkMode::Simple).unwrap().get(0).clone();
    for m in 0..=5i64 {
        let closed = ratio(2 * m * m + 4 * m + 3, 3 * (m + 1).pow(3));
        let pattern: Vec<i64> = (0..=m).collect();
        let brute = spread_exhaustive(&[1, -1, 1, -1], &pattern, &vec![ratio(1, m + 1); m as usize + 1]);
        let scheme = CouplingScheme::uniform(m as usize, m as usize + 1, 1).unwrap();
        let engine = spreading_prob_exact(&c4, &scheme).unwrap();
        ensure(
            engine == closed && brute == closed && spreading_prob_c4_uniform(m).unwrap() == closed,
            || format!("m={m}: engine {engine}, closed {closed}, exhaustive {brute}"),
        )?;
    }
    Ok("m=0..5 exact, e.g. m=1 -> 3/8".into())
}

// Lifted graph built directly from the definition, independent of the library's assembler.
fn lifted_columns(p: &[Vec<i64>], l: &[Vec<i64>], gamma: usize, kappa: usize, len: usize, z: usize) -> Vec<Vec<usize>> {
    let mut cols = vec![Vec::new(); kappa * len * z];
    for r in 0..len {
        for i in 0..gamma {
            for j in 0..kappa {
                let row_block = (r + p[i][j] as usize) * gamma + i;
                let col_block = r * kappa + j;
                for c in 0..z {
                    cols[col_block * z + c].push(row_block * z + (c + l[i][j] as usize) % z);
                }
            }
        }
    }
    for c in &mut cols {
        c.sort_unstable();
    }
    cols
}

fn lifted_four_cycle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut with, mut without, mut total) = (0, 0, 0);
    for gamma in [2, 3] {
        for kappa in [2, 3, 4] {
            let base = BaseCode::all_ones(gamma, kappa).unwrap();
            let set = enumerate_cycles(&base, 4, WalkMode::Simple).unwrap();
            for m in 0..=2usize {
                for z in 1..=6usize {
                    for _ in 0..200 {
                        let len = m + 1 + rng.gen_range(0..2);
                        let scheme = CouplingScheme::uniform(m, len, z as u64).unwrap();
                        let p: Vec<Vec<i64>> = (0..gamma)
                            .map(|_| (0..kappa).map(|_| rng.gen_range(0..=m as i64)).collect())
                            .collect();
                        let l: Vec<Vec<i64>> = (0..gamma)
                            .map(|_| (0..kappa).map(|_| rng.gen_range(0..z as i64)).collect())
                            .collect();
                        let pa = Assignment::from_dense(Stage::Partition, &base, &p).unwrap();
                        let la = Assignment::from_dense(Stage::Lift, &base, &l).unwrap();
                        let predicted = set
                            .candidates()
                            .iter()
                            .any(|c| is_active_partition(c, &pa).unwrap() && is_active_lift(c, &la, z as u64).unwrap());
                        let cols = lifted_columns(&p, &l, gamma, kappa, len, z);
                        let actual = has_four_cycle(&cols);
                        let inst = CodeInstance::new(base.clone(), scheme, pa, la, None).unwrap();
                        let assembled = assemble_qc(&inst).unwrap();
                        ensure(assembled.cols() == &cols[..], || {
                            format!("assembler disagrees at {gamma}x{kappa} m={m} Z={z}")
                        })?;
                        ensure(predicted == actual, || {
                            format!("{gamma}x{kappa} m={m} Z={z} L={len}: predicted {predicted}, graph {actual}, P={p:?}, L={l:?}")
                        })?;
                        total += 1;
                        if actual {
                            with += 1;
                        } else {
                            without += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{total} instances, 0 mismatches ({with} with a 4-cycle, {without} without)"
    ))
}

fn lift_exactness() -> Outcome {
    let mut checked = 0;
    let mut bounded = 0;
    let bases = [
        BaseCode::all_ones(3, 3).unwrap(),
        BaseCode::all_ones(3, 4).unwrap(),
        BaseCode::from_mask(vec![
            vec![true, true, false],
            vec![true, true, true],
            vec![false, true, true],
        ])
        .unwrap(),
    ];
    for base in &bases {
        for two_g in [4, 6] {
            for c in enumerate_cycles(base, two_g, WalkMode::Simple).unwrap().candidates() {
                let coeffs: Vec<i64> = c.coeffs().values().copied().collect();
                for z in 1..=6u64 {
                    let exact = lift_prob_exact(c, z).unwrap();
                    let brute = lift_exhaustive(&coeffs, z);
                    ensure(exact == brute, || {
                        format!("{} Z={z}: {exact} vs exhaustive {brute}", c.key())
                    })?;
                    let bound = lift_prob_bound(&HarmfulStructure::single(c.clone()), z).unwrap();
                    if bound <= BigRational::one() {
                        ensure(exact <= bound, || {
                            format!("{} Z={z}: {exact} above bound {bound}", c.key())
                        })?;
                        bounded += 1;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (cycle, Z) pairs exact, {bounded} under the bound"))
}

fn threshold_calculator() -> Outcome {
    let r = corollary1_check(3, 7, 1, 34).map_err(|e| e.to_string())?;
    let delta = ((2 * 3 - 3) * (2 * 7 - 3)) as u32;
    let t1 = falling_ratio(delta);
    let t1_f = t1.to_f64().unwrap();
    let t2 = ratio(27, 256 * (21 - 3 - 7));
    ensure(r.branch == Branch::I, || format!("branch {:?}", r.branch))?;
    ensure(((r.threshold_i.value - t1_f) / t1_f).abs() < 1e-3, || {
        format!("I = {} vs exact {t1_f}", r.threshold_i.value)
    })?;
    ensure(format!("{:.4}", r.threshold_i.value) == "0.0113", || {
        format!("I = {} does not round to 0.0113", r.threshold_i.value)
    })?;
    let ii = r.threshold_ii.as_ref().and_then(|t| t.exact.clone());
    ensure(ii == Some(t2.clone()) && t2 == ratio(27, 2816), || {
        format!("II = {ii:?}")
    })?;
    // smallest Z with (3/8)/Z <= I, by exact comparison
    let lhs = ratio(2 + 4 + 3, 3 * 8);
    let mut z = 1i64;
    while &lhs / BigRational::from_integer(BigInt::from(z)) > t1 {
        z += 1;
    }
    let engine = corollary1_min_z(3, 7, 1).map_err(|e| e.to_string())?;
    ensure(engine as i64 == z && z == 34, || {
        format!("min Z engine {engine}, oracle {z}")
    })?;
    ensure(r.feasible && !corollary1_check(3, 7, 1, 33).unwrap().feasible, || {
        "feasibility flips at the wrong Z".into()
    })?;
    Ok(format!(
        "branch I, I = {:.6}, II = 27/2816, min Z = {engine}",
        r.threshold_i.value
    ))
}

fn two_stage_girth() -> Outcome {
    let base = BaseCode::all_ones(3, 4).unwrap();
    let scheme = CouplingScheme::uniform(1, 4, 8).unwrap();
    let set = enumerate_cycles(&base, 4, WalkMode::Simple).unwrap();
    let mut min_girth = usize::MAX;
    for seed in 0..100u64 {
        let (inst, trace) =
            construct_two_stage(&base, &scheme, &set, MtOptions::seeded(seed)).map_err(|e| e.to_string())?;
        ensure(trace.terminated(), || format!("seed {seed} did not terminate"))?;
        let h = assemble_qc(&inst).unwrap();
        let g = bfs_girth(h.cols(), h.num_rows()).unwrap_or(usize::MAX);
        ensure(g >= 6, || format!("seed {seed}: girth {g}"))?;
        min_girth = min_girth.min(g);
    }
    Ok(format!("100/100 terminated, minimum girth {min_girth}"))
}

fn resample_bound() -> Outcome {
    let mut cfg = ExperimentConfig::new(3, 7, 1, 34);
    cfg.mode = ConstructionMode::Joint;
    cfg.trials = 1000;
    cfg.seed = 1;
    let t = verify_theorem2(&cfg).map_err(|e| e.to_string())?;
    let k = 3 * 21;
    let bound = ratio(k, 33 - 2);
    ensure(t.bound.as_ref() == Some(&bound) && bound == ratio(63, 31), || {
        format!("bound {:?}", t.bound)
    })?;
    let n = t.resamples.count as f64;
    let allowance = 2.326 * t.resamples.std_dev / n.sqrt();
    let limit = bound.to_f64().unwrap() + allowance;
    ensure(t.failed == 0, || format!("{} trials hit the cap", t.failed))?;
    ensure(t.resamples.mean <= limit, || {
        format!("mean {:.4} > {limit:.4}", t.resamples.mean)
    })?;
    ensure(t.verdict == Verdict::Pass, || format!("engine verdict {:?}", t.verdict))?;
    Ok(format!(
        "mean {:.4} <= 63/31 + {allowance:.4} = {limit:.4} over {} trials",
        t.resamples.mean, t.resamples.count
    ))
}

fn shift_cap() -> Outcome {
    let delta = 9.0f64;
    let limit = 1.0 / (std::f64::consts::E * (delta + 1.0));
    let m = (0i64..)
        .find(|&m| spreading_prob_c4_uniform(m).unwrap().to_f64().unwrap() <= limit)
        .unwrap();
    let mut cfg = ExperimentConfig::new(3, 3, m as usize, 1);
    cfg.mode = ConstructionMode::PartitionOnly;
    cfg.trials = 20_000;
    cfg.seed = 7;
    let s = estimate_mt_shift(&cfg).map_err(|e| e.to_string())?;
    let universal = (8.0f64 / 3.0).exp();
    let sharper = (1.0 + 1.0 / delta).powi(24);
    ensure(s.symmetric_precondition, || format!("precondition fails at m={m}"))?;
    ensure(s.failed == 0, || format!("{} trials failed", s.failed))?;
    ensure(!s.observables.is_empty(), || "no observables".into())?;
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for o in &s.observables {
        let upper = o.wilson.1 / o.p_omega_f64;
        worst = worst.max(upper);
        ratios.push(o.p_mt / o.p_omega_f64);
        ensure(upper <= universal && upper <= sharper, || {
            format!("{}: upper ratio {upper:.4}", o.key)
        })?;
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let sd = (ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (ratios.len() as f64 - 1.0).max(1.0)).sqrt();
    let half = 1.96 * sd / (ratios.len() as f64).sqrt();
    Ok(format!(
        "m={m}, {} observables, max upper ratio {worst:.4} <= {sharper:.4} <= {universal:.4}; mean ratio {mean:.4} +- {half:.4}",
        s.observables.len()
    ))
}

fn locality_null() -> Outcome {
    let mut cfg = ExperimentConfig::new(6, 8, 1, 8);
    cfg.mode = ConstructionMode::Joint;
    cfg.trials = 20_000;
    cfg.seed = 3;
    cfg.eliminate = CycleClass::lengths(&[4]).in_region(Region {
        rows: [0, 3],
        cols: [0, 4],
    });
    cfg.observe = CycleClass::lengths(&[6]).in_region(Region {
        rows: [3, 6],
        cols: [4, 8],
    });
    let s = estimate_mt_shift(&cfg).map_err(|e| e.to_string())?;
    ensure(s.failed == 0, || format!("{} trials failed", s.failed))?;
    let n = s.succeeded as f64;
    let mut worst: f64 = 0.0;
    for o in &s.observables {
        let p = o.p_omega_f64;
        let z = (o.hits as f64 / n - p) / (p * (1.0 - p) / n).sqrt();
        worst = worst.max(z.abs());
        ensure(z.abs() <= 4.0, || format!("{}: z = {z:.3}", o.key))?;
        ensure(o.eliminated_neighbors == 0 && o.cap == 1.0, || {
            format!("{}: cap {}", o.key, o.cap)
        })?;
    }
    Ok(format!(
        "{} observables, max |z| = {worst:.3}, cap 1",
        s.observables.len()
    ))
}

fn delta_audit() -> Outcome {
    let mut lines = Vec::new();
    for (g, k) in [(3usize, 3usize), (3, 7), (4, 5)] {
        let base = BaseCode::all_ones(g, k).unwrap();
        let set = enumerate_cycles(&base, 4, WalkMode::Simple).unwrap();
        let observed = dependency_degree(&set).max_degree;
        let pairwise = c4_delta_pairwise(g, k);
        let formula = (2 * g - 3) * (2 * k - 3);
        ensure(observed == pairwise, || {
            format!("{g}x{k}: engine {observed}, pairwise {pairwise}")
        })?;
        let z = corollary1_min_z(g, k, 1).unwrap();
        let scheme = CouplingScheme::uniform(1, 2, z).unwrap();
        let probs = joint_probs(&set, &scheme).unwrap();
        let closed = theorem1_feasibility(&base, &set, &probs, DeltaSource::ClosedForm).map_err(|e| e.to_string())?;
        let obs = theorem1_feasibility(&base, &set, &probs, DeltaSource::Observed).map_err(|e| e.to_string())?;
        ensure(closed.delta == formula as u64 && obs.delta == observed as u64, || {
            format!("{g}x{k}: reported deltas")
        })?;
        ensure(
            closed.delta_observed == obs.delta_observed && closed.p_max == obs.p_max && closed.k == obs.k,
            || format!("{g}x{k}: reports disagree on shared fields"),
        )?;
        ensure(obs.threshold >= closed.threshold, || {
            format!("{g}x{k}: smaller Delta gave a smaller threshold")
        })?;
        ensure(!closed.feasible || obs.feasible, || {
            format!("{g}x{k}: feasible only under the larger Delta")
        })?;
        lines.push(format!(
            "{g}x{k} observed {observed} formula {formula} (diff {}), feasible {}/{} at Z={z}",
            formula as i64 - observed as i64,
            closed.feasible,
            obs.feasible
        ));
    }
    Ok(lines.join("; "))
}

fn run_twice(name: &str, args: &[&str], expect: i32) -> Result<(), String> {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    for d in [&a, &b] {
        let mut full = vec!["--out-dir", d.path().to_str().unwrap()];
        full.extend_from_slice(args);
        let code = qcsc(&full);
        ensure(code == expect, || format!("{name}: exit code {code}"))?;
    }
    let (x, y) = (dir_contents(a.path()), dir_contents(b.path()));
    ensure(!x.is_empty(), || format!("{name}: no artifacts"))?;
    ensure(x == y, || format!("{name}: artifacts differ"))
}

fn cli_determinism() -> Outcome {
    let code = ["--gamma", "3", "--kappa", "4", "--m", "1", "--Z", "8"];
    let with = |head: &[&'static str]| -> Vec<&'static str> { head.iter().chain(code.iter()).copied().collect() };
    run_twice("bounds", &with(&["bounds"]), 0)?;
    run_twice("enumerate", &with(&["enumerate", "--targets", "c4,c6"]), 0)?;
    run_twice("construct", &with(&["--seed", "4", "construct"]), 0)?;
    run_twice(
        "construct joint",
        &with(&["--seed", "4", "construct", "--mode", "joint"]),
        0,
    )?;
    let src = tempdir().unwrap();
    let dir = src.path().to_str().unwrap();
    let mut args = vec!["--out-dir", dir, "--seed", "4", "construct"];
    args.extend_from_slice(&code);
    ensure(qcsc(&args) == 0, || "construct for verify failed".into())?;
    let inst = src.path().join("instance.json");
    let inst = inst.to_str().unwrap();
    run_twice("verify", &["verify", "--in", inst, "--targets", "c4"], 0)?;
    run_twice(
        "export",
        &[
            "export",
            "--in",
            inst,
            "--alist",
            "h.alist",
            "--dense",
            "h.txt",
            "--protograph",
            "p.alist",
        ],
        0,
    )?;
    let exp = [
        "--seed",
        "2",
        "experiment",
        "--gamma",
        "3",
        "--kappa",
        "3",
        "--m",
        "2",
        "--mode",
        "partition-only",
        "--trials",
        "200",
    ];
    run_twice("experiment", &exp, 0)?;
    let mut base = exp.to_vec();
    base.push("--baseline");
    run_twice("experiment baseline", &base, 0)?;
    let mut sw = exp.to_vec();
    sw.extend_from_slice(&["--sweep", "m=1..3"]);
    run_twice("experiment sweep", &sw, 0)?;
    Ok(
        "bounds, enumerate, construct (two modes), verify, export, experiment (run, baseline, sweep) byte-identical"
            .into(),
    )
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("4-cycle spreading probability closed form", c4_closed_form),
        (
            "lifted 4-cycle iff an active base 4-cycle",
            lifted_four_cycle_equivalence,
        ),
        ("lift probability exact and under its bound", lift_exactness),
        ("girth-6 threshold calculator at 3x7, m=1", threshold_calculator),
        ("two-stage construction reaches girth 6", two_stage_girth),
        ("mean resamples within the expected bound", resample_bound),
        ("6-cycle shift ratio under its caps", shift_cap),
        ("edge-disjoint observables are unshifted", locality_null),
        ("dependency degree audit", delta_audit),
        ("CLI artifacts are byte-deterministic", cli_determinism),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[{}] PASS {name}: {detail} ({secs:.1} s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("[{}] FAIL {name}: {detail} ({secs:.1} s)", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
