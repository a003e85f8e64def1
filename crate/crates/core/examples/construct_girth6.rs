// Two-stage construction of a QC-SC code free of 4-cycles, checked by an
// independent girth search.

use qcsc::code::{assemble_qc, BaseCode, CouplingScheme};
use qcsc::mt::{construct_two_stage, run_joint, MtOptions};
use qcsc::walks::{classify_absorbing_set, enumerate_cycles, girth, WalkMode};

fn main() -> qcsc::Result<()> {
    let base = BaseCode::all_ones(3, 4)?;
    let scheme = CouplingScheme::uniform(1, 4, 8)?;
    let targets = enumerate_cycles(&base, 4, WalkMode::Simple)?;

    let (inst, trace) = construct_two_stage(&base, &scheme, &targets, MtOptions::seeded(7))?;
    let h = assemble_qc(&inst)?;
    println!(
        "two-stage: {} survivors after spreading, {} resamples, girth {:?}",
        trace.survivors,
        trace.total_resamples(),
        girth(&h)
    );

    let (inst, trace) = run_joint(&base, &scheme, &targets, MtOptions::seeded(7))?;
    let h = assemble_qc(&inst)?;
    println!("joint: {} resamples, girth {:?}", trace.total_resamples, girth(&h));

    let class = classify_absorbing_set(&h, &[0, 1, 2, 3])?;
    println!(
        "variable nodes 0..4 form a ({}, {}) set, absorbing = {}",
        class.a, class.b, class.is_absorbing
    );
    Ok(())
}
