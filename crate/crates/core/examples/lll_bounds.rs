// Minimum lifting degree for girth 6 and the expected number of resamples.

use qcsc::bounds::{corollary1_check, corollary1_min_z, corollary4_bound, e_eight_thirds, theorem2_resample_bound};
use qcsc::rational;

fn main() -> qcsc::Result<()> {
    println!("gamma kappa  m  min_Z  branch  resample_bound");
    for (g, k) in [(3, 4), (3, 7), (4, 8), (5, 10)] {
        for m in [1, 2, 4] {
            let z = corollary1_min_z(g, k, m)?;
            let c = corollary1_check(g, k, m, z)?;
            let k4 = (g * (g - 1) / 2 * (k * (k - 1) / 2)) as u64;
            let w = ((g - 1) * (k - 1)) as u64;
            let bound = theorem2_resample_bound(k4, c.delta, w, 4, c.branch)
                .map(|b| rational::format(&b))
                .unwrap_or_else(|_| "-".into());
            println!("{g:>5} {k:>5} {m:>2} {z:>6}  {:?}  {bound}", c.branch);
        }
    }
    for (g, k) in [(3, 3), (3, 10), (6, 6)] {
        let c = corollary4_bound(g, k, 6)?;
        println!(
            "6-cycle shift after removing 4-cycles, {g}x{k}: {:.4} (cap {:.4})",
            c.value,
            e_eight_thirds()
        );
    }
    Ok(())
}
