// Cycle candidates of an all-ones base and their dependency structure.

use qcsc::code::BaseCode;
use qcsc::walks::{c4_delta_formula, dependency_degree, enumerate_cycles, harmful_weight, WalkMode};

fn main() -> qcsc::Result<()> {
    let base = BaseCode::all_ones(3, 3)?;
    for len in [4, 6, 8] {
        let simple = enumerate_cycles(&base, len, WalkMode::Simple)?;
        let tbc = enumerate_cycles(&base, len, WalkMode::Tbc)?;
        let dep = dependency_degree(&simple);
        println!(
            "length {len}: {} simple, {} closed walks, max dependency degree {}, harmful weight {}",
            simple.len(),
            tbc.len(),
            dep.max_degree,
            harmful_weight(&base, &simple).max
        );
    }
    let c4 = enumerate_cycles(&base, 4, WalkMode::Simple)?;
    for c in c4.candidates().iter().take(3) {
        println!("  {} coefficients {:?}", c.key(), c.coeffs());
    }
    println!("closed-form Delta for 4-cycles: {}", c4_delta_formula(3, 3));
    Ok(())
}
