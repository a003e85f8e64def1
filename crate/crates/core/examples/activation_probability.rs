// Exact activation probabilities of short cycles.

use qcsc::code::{BaseCode, CouplingScheme};
use qcsc::probability::{joint_prob, spreading_prob_c4_uniform};
use qcsc::rational;
use qcsc::walks::{enumerate_cycles, WalkMode};

fn main() -> qcsc::Result<()> {
    for m in 0..=5 {
        let p = spreading_prob_c4_uniform(m)?;
        println!(
            "m = {m}: P(4-cycle survives spreading) = {} = {:.5}",
            rational::format(&p),
            rational::to_f64(&p)
        );
    }
    let base = BaseCode::all_ones(4, 4)?;
    let scheme = CouplingScheme::uniform(2, 3, 8)?;
    for len in [4, 6, 8] {
        let set = enumerate_cycles(&base, len, WalkMode::Simple)?;
        let c = &set.candidates()[0];
        let p = joint_prob(c, &scheme)?;
        println!(
            "{}: spread {}, lift {}, joint {}",
            c.key(),
            rational::format(&p.spread),
            rational::format(&p.lift),
            rational::format(&p.joint)
        );
    }
    Ok(())
}
