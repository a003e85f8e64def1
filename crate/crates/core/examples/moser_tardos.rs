// The resampling engine on a generic problem: 3-color a 12-cycle so that no
// edge is monochromatic.

use qcsc::mt::{run_mt, Domain, Event, EventTable, Predicate, VariableFramework};

fn main() -> qcsc::Result<()> {
    let n = 12;
    let fw = VariableFramework::new(vec![Domain::uniform(vec![0, 1, 2]); n], 2024);
    let events = (0..n)
        .map(|v| {
            let w = (v + 1) % n;
            Event::new(format!("edge{v:02}"), Predicate::LinearZero(vec![(v, 1), (w, -1)]))
        })
        .collect();
    let table = EventTable::new(events, &fw)?;
    let (colors, trace) = run_mt(&fw, &table, Some(10_000));
    println!("colors: {colors:?}");
    println!(
        "terminated {} after {} resamples in {} outer iterations",
        trace.terminated, trace.total_resamples, trace.wall_iterations
    );
    Ok(())
}
