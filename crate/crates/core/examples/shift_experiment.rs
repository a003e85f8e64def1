// How eliminating 4-cycles changes the probability of 6-cycles.

use qcsc::experiment::{estimate_mt_shift, ConstructionMode, ExperimentConfig};

fn main() -> qcsc::Result<()> {
    let mut cfg = ExperimentConfig::new(3, 3, 18, 1);
    cfg.mode = ConstructionMode::PartitionOnly;
    cfg.trials = 2000;
    cfg.seed = 1;
    let stats = estimate_mt_shift(&cfg)?;
    println!("symmetric precondition holds: {}", stats.symmetric_precondition);
    for o in &stats.observables {
        let (lo, hi) = o.ratio_interval.unwrap_or((f64::NAN, f64::NAN));
        println!(
            "{}: P_Omega {:.5}, P_MT {:.5}, ratio in [{lo:.3}, {hi:.3}], cap {:.3}",
            o.key, o.p_omega_f64, o.p_mt, o.cap
        );
    }
    println!("caps respected: {:?}", stats.caps_respected);
    Ok(())
}
