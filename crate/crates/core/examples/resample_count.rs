// Mean number of resamples against the bound k / (Delta - 2).

use qcsc::experiment::{verify_theorem2, ConstructionMode, ExperimentConfig};

fn main() -> qcsc::Result<()> {
    let mut cfg = ExperimentConfig::new(3, 7, 1, 34);
    cfg.mode = ConstructionMode::Joint;
    cfg.trials = 200;
    let t = verify_theorem2(&cfg)?;
    println!(
        "mean {:.3} (sd {:.3}, max {}), bound {:?} + {:.3}: {:?}",
        t.resamples.mean, t.resamples.std_dev, t.resamples.max, t.bound_f64, t.allowance, t.verdict
    );
    Ok(())
}
