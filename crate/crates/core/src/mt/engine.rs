use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::framework::{EventTable, VariableFramework};
use super::rng;

/// Inner-loop ordering recorded in every trace: among events whose scope
/// meets the resampled one, the globally least-indexed is taken first.
pub const INNER_ORDER: &str = "least-global-index-among-intersecting";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MTTrace {
    pub total_resamples: u64,
    /// Resamples per event label. Events sharing a label are pooled.
    pub per_event: BTreeMap<String, u64>,
    pub wall_iterations: u64,
    pub terminated: bool,
    pub seed: u64,
    /// Individual variable draws made by RESAMPLE calls.
    pub variable_draws: u64,
    pub max_stack_depth: usize,
    pub inner_order: String,
}

impl MTTrace {
    fn new(seed: u64, table: &EventTable) -> Self {
        MTTrace {
            total_resamples: 0,
            per_event: table.events().iter().map(|e| (e.label.clone(), 0)).collect(),
            wall_iterations: 0,
            terminated: true,
            seed,
            variable_draws: 0,
            max_stack_depth: 0,
            inner_order: INNER_ORDER.to_string(),
        }
    }
}

struct State<'a> {
    fw: &'a VariableFramework,
    table: &'a EventTable,
    rng: rng::StreamRng,
    values: Vec<i64>,
    /// Events touching each variable.
    by_var: Vec<Vec<usize>>,
    /// Events whose scope meets each event's scope, self included, ascending.
    neighbors: Vec<Vec<usize>>,
    holds: Vec<bool>,
    occurring: BTreeSet<usize>,
    stamp: Vec<u64>,
    epoch: u64,
    per_event: Vec<u64>,
    total: u64,
    draws: u64,
}

impl<'a> State<'a> {
    fn new(fw: &'a VariableFramework, table: &'a EventTable) -> Self {
        let mut by_var = vec![Vec::new(); fw.len()];
        for (idx, e) in table.events().iter().enumerate() {
            for &v in &e.scope {
                by_var[v].push(idx);
            }
        }
        let neighbors = table
            .events()
            .iter()
            .map(|e| {
                let set: BTreeSet<usize> = e.scope.iter().flat_map(|&v| by_var[v].iter().copied()).collect();
                set.into_iter().collect()
            })
            .collect();
        let mut rng = rng::stream(fw.seed());
        let values = (0..fw.len()).map(|v| fw.domain(v).sample(&mut rng)).collect();
        let n = table.len();
        let mut state = State {
            fw,
            table,
            rng,
            values,
            by_var,
            neighbors,
            holds: vec![false; n],
            occurring: BTreeSet::new(),
            stamp: vec![0; n],
            epoch: 0,
            per_event: vec![0; n],
            total: 0,
            draws: 0,
        };
        for idx in 0..n {
            state.refresh(idx);
        }
        state
    }

    fn refresh(&mut self, idx: usize) {
        let now = self.table.events()[idx].predicate.holds(&self.values);
        if now != self.holds[idx] {
            self.holds[idx] = now;
            if now {
                self.occurring.insert(idx);
            } else {
                self.occurring.remove(&idx);
            }
        }
    }

    fn resample(&mut self, idx: usize) {
        self.total += 1;
        self.per_event[idx] += 1;
        self.epoch += 1;
        let scope = &self.table.events()[idx].scope;
        for &v in scope {
            self.values[v] = self.fw.domain(v).sample(&mut self.rng);
            self.draws += 1;
        }
        let mut touched = Vec::new();
        for &v in scope {
            for &e in &self.by_var[v] {
                if self.stamp[e] != self.epoch {
                    self.stamp[e] = self.epoch;
                    touched.push(e);
                }
            }
        }
        for e in touched {
            self.refresh(e);
        }
    }
}

/// Runs Moser-Tardos with the recursive RESAMPLE, unrolled onto an explicit
/// stack. Returns the final variable values and the trace; `terminated` is
/// false when the resample cap was hit.
pub fn run_mt(fw: &VariableFramework, table: &EventTable, max_resamples: Option<u64>) -> (Vec<i64>, MTTrace) {
    let mut trace = MTTrace::new(fw.seed(), table);
    let mut st = State::new(fw, table);
    let cap = max_resamples.unwrap_or(u64::MAX);
    let mut stack: Vec<usize> = Vec::new();
    'outer: while let Some(&first) = st.occurring.first() {
        trace.wall_iterations += 1;
        if st.total >= cap {
            trace.terminated = false;
            break;
        }
        st.resample(first);
        stack.push(first);
        while let Some(&top) = stack.last() {
            trace.max_stack_depth = trace.max_stack_depth.max(stack.len());
            let next = st.neighbors[top].iter().copied().find(|&l| st.holds[l]);
            match next {
                Some(l) => {
                    if st.total >= cap {
                        trace.terminated = false;
                        break 'outer;
                    }
                    st.resample(l);
                    stack.push(l);
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    trace.total_resamples = st.total;
    trace.variable_draws = st.draws;
    for (e, &n) in table.events().iter().zip(&st.per_event) {
        *trace.per_event.get_mut(&e.label).expect("label registered") += n;
    }
    if trace.terminated {
        assert!(
            table.events().iter().all(|e| !e.predicate.holds(&st.values)),
            "terminated run left an event holding"
        );
    }
    (st.values, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mt::framework::{Domain, Event, Predicate};

    fn coin_table(fw: &VariableFramework) -> EventTable {
        let e = Event::with_scope("one", vec![0], Predicate::custom(|v| v[0] == 1));
        EventTable::new(vec![e], fw).unwrap()
    }

    #[test]
    fn empty_table_keeps_initial_sample() {
        let fw = VariableFramework::new(vec![Domain::uniform(vec![3, 4]); 5], 9);
        let (values, trace) = run_mt(&fw, &EventTable::empty(), None);
        assert_eq!(values.len(), 5);
        assert_eq!(trace.total_resamples, 0);
        assert_eq!(trace.wall_iterations, 0);
        assert!(trace.terminated);
        let (again, _) = run_mt(&fw, &EventTable::empty(), None);
        assert_eq!(values, again);
    }

    #[test]
    fn single_coin_mean_is_one() {
        let trials = 10_000u64;
        let mut sum = 0u64;
        for t in 0..trials {
            let fw = VariableFramework::new(vec![Domain::uniform(vec![0, 1])], rng::trial_seed(5, t));
            let (values, trace) = run_mt(&fw, &coin_table(&fw), None);
            assert_eq!(values, vec![0]);
            assert_eq!(trace.total_resamples, trace.per_event["one"]);
            sum += trace.total_resamples;
        }
        let mean = sum as f64 / trials as f64;
        assert!((0.9..=1.1).contains(&mean), "mean {mean}");
    }

    #[test]
    fn cap_stops_with_partial_trace() {
        // The second event can never be falsified together with the first.
        let fw = VariableFramework::new(vec![Domain::uniform(vec![0, 1])], 3);
        let a = Event::with_scope("zero", vec![0], Predicate::custom(|v| v[0] == 0));
        let b = Event::with_scope("one", vec![0], Predicate::custom(|v| v[0] == 1));
        let table = EventTable::new(vec![a, b], &fw).unwrap();
        let (_, trace) = run_mt(&fw, &table, Some(50));
        assert!(!trace.terminated);
        assert_eq!(trace.total_resamples, 50);
        assert_eq!(trace.per_event.values().sum::<u64>(), 50);
    }

    #[test]
    fn accounting_and_determinism() {
        let n = 12;
        let fw = VariableFramework::new(vec![Domain::uniform(vec![0, 1, 2]); n], 77);
        let events: Vec<Event> = (0..n - 2)
            .map(|i| {
                Event::new(
                    format!("e{i:02}"),
                    Predicate::LinearZeroMod {
                        terms: vec![(i, 1), (i + 1, -1), (i + 2, 1)],
                        modulus: 3,
                    },
                )
            })
            .collect();
        let table = EventTable::new(events, &fw).unwrap();
        let (values, trace) = run_mt(&fw, &table, None);
        assert!(trace.terminated);
        assert_eq!(trace.total_resamples, trace.per_event.values().sum::<u64>());
        let expected_draws: u64 = table
            .events()
            .iter()
            .map(|e| trace.per_event[&e.label] * e.scope.len() as u64)
            .sum();
        assert_eq!(trace.variable_draws, expected_draws);
        let (values2, trace2) = run_mt(&fw, &table, None);
        assert_eq!(values, values2);
        assert_eq!(trace, trace2);
    }
}
