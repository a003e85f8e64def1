// CSV sweep over the coupling memory.

use qcsc::experiment::{sweep, ConstructionMode, ExperimentConfig, Vary};

fn main() -> qcsc::Result<()> {
    let mut cfg = ExperimentConfig::new(3, 4, 1, 16);
    cfg.mode = ConstructionMode::Joint;
    cfg.trials = 50;
    print!("{}", sweep(&cfg, &Vary::Memory((1..=4).collect()))?);
    Ok(())
}
