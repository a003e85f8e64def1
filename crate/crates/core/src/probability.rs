//! Exact activation probabilities under random edge-spreading and random
//! cyclic lifting, with the closed forms and upper bounds used as cross-checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::CouplingScheme;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::walks::{CandidateSet, HarmfulStructure, WalkCandidate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActivationProbability {
    #[serde(serialize_with = "rational::ser_str")]
    pub spread: Rational,
    #[serde(serialize_with = "rational::ser_str")]
    pub lift: Rational,
    #[serde(serialize_with = "rational::ser_str")]
    pub joint: Rational,
    #[serde(serialize_with = "rational::ser_str")]
    pub lift_bound: Rational,
}

/// Integer weights `w_t = p_t * D` with `D` the common denominator.
fn integer_weights(probs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = probs.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let weights = probs.iter().map(|p| p.numer() * (&den / p.denom())).collect();
    (weights, den)
}

/// Distribution of `sum_e coeff[e] * X_e` for i.i.d. `X_e` drawn from
/// `values` with probabilities `probs`, returned as `(offset, probabilities)`
/// where index `k` holds the probability of the sum `k - offset`.
pub fn linear_form_distribution(coeffs: &[i64], values: &[i64], probs: &[Rational]) -> (i64, Vec<Rational>) {
    let (weights, den) = integer_weights(probs);
    let vmin = *values.iter().min().unwrap();
    let vmax = *values.iter().max().unwrap();
    // Bounds on every partial sum, not just the final one: with positive
    // pattern values a prefix can overshoot the range of the full sum.
    let mut lo = 0i64;
    let mut hi = 0i64;
    for &c in coeffs {
        lo += (c * vmin).min(c * vmax).min(0);
        hi += (c * vmin).max(c * vmax).max(0);
    }
    let width = (hi - lo + 1) as usize;
    let mut counts = vec![BigInt::zero(); width];
    counts[(-lo) as usize] = BigInt::one();
    let mut cur_lo = 0i64;
    let mut cur_hi = 0i64;
    let mut total = BigInt::one();
    for &c in coeffs.iter().filter(|&&c| c != 0) {
        let step_lo = (c * vmin).min(c * vmax);
        let step_hi = (c * vmin).max(c * vmax);
        let mut next = vec![BigInt::zero(); width];
        for s in cur_lo..=cur_hi {
            let here = &counts[(s - lo) as usize];
            if here.is_zero() {
                continue;
            }
            for (v, w) in values.iter().zip(&weights) {
                next[(s + c * v - lo) as usize] += here * w;
            }
        }
        counts = next;
        cur_lo += step_lo;
        cur_hi += step_hi;
        total *= &den;
    }
    let dist = counts.into_iter().map(|n| BigRational::new(n, total.clone())).collect();
    (-lo, dist)
}

/// Probability that the candidate survives random edge-spreading: the signed
/// sum of i.i.d. pattern values over its edges is zero.
pub fn spreading_prob_exact(c: &WalkCandidate, scheme: &CouplingScheme) -> Result<Rational> {
    if c.coeffs().is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    let coeffs: Vec<i64> = c.coeffs().values().copied().collect();
    Ok(spreading_prob_for_coeffs(&coeffs, scheme))
}

pub(crate) fn spreading_prob_for_coeffs(coeffs: &[i64], scheme: &CouplingScheme) -> Rational {
    let (offset, dist) = linear_form_distribution(coeffs, scheme.pattern(), scheme.probs());
    dist[offset as usize].clone()
}

/// `(2m^2 + 4m + 3) / (3 (m+1)^3)`: a 4-cycle surviving uniform spreading
/// over `(0, 1, ..., m)`.
pub fn spreading_prob_c4_uniform(m: i64) -> Result<Rational> {
    if m < 0 {
        return Err(Error::InvalidParameter(format!("memory must be >= 0, got {m}")));
    }
    let m = BigInt::from(m);
    let num = BigInt::from(2) * &m * &m + BigInt::from(4) * &m + BigInt::from(3);
    let m1 = &m + BigInt::one();
    let den = BigInt::from(3) * &m1 * &m1 * &m1;
    Ok(BigRational::new(num, den))
}

/// Probability that `sum c_e L_e = 0 (mod z)` for i.i.d. uniform shifts:
/// `gcd(c_1, ..., c_n, z) / z`, or 1 when every coefficient is zero.
pub fn lift_prob_exact(c: &WalkCandidate, z: u64) -> Result<Rational> {
    let coeffs: Vec<i64> = c.coeffs().values().copied().collect();
    lift_prob_for_coeffs(&coeffs, z)
}

pub(crate) fn lift_prob_for_coeffs(coeffs: &[i64], z: u64) -> Result<Rational> {
    if z < 1 {
        return Err(Error::InvalidLiftingDegree);
    }
    if coeffs.iter().all(|&c| c == 0) {
        return Ok(Rational::one());
    }
    let g = coeffs.iter().fold(z as i64, |acc, &c| acc.gcd(&c.abs()));
    Ok(rational::ratio(g, z as i64))
}

/// Upper bound `prod |c_i| / (4Z)^{n_b}` on the lift activation probability.
/// Not capped; see [`ActivationProbability::lift_bound`] consumers for capping.
pub fn lift_prob_bound(h: &HarmfulStructure, z: u64) -> Result<Rational> {
    if z < 1 {
        return Err(Error::InvalidLiftingDegree);
    }
    let num: BigInt = h.cycles().iter().map(|c| BigInt::from(c.length())).product();
    let den = BigInt::from(4 * z).pow(h.cycles().len() as u32);
    Ok(BigRational::new(num, den))
}

pub fn joint_prob(c: &WalkCandidate, scheme: &CouplingScheme) -> Result<ActivationProbability> {
    let spread = spreading_prob_exact(c, scheme)?;
    let lift = lift_prob_exact(c, scheme.lifting_degree())?;
    let lift_bound = lift_prob_bound(&HarmfulStructure::single(c.clone()), scheme.lifting_degree())?;
    Ok(ActivationProbability {
        joint: &spread * &lift,
        spread,
        lift,
        lift_bound,
    })
}

/// Activation probabilities for a whole candidate set, in candidate order.
pub fn joint_probs(set: &CandidateSet, scheme: &CouplingScheme) -> Result<Vec<ActivationProbability>> {
    set.candidates().par_iter().map(|c| joint_prob(c, scheme)).collect()
}

/// Activation of a multi-cycle structure.
#[derive(Debug, Clone, PartialEq)]
pub enum StructureProbability {
    /// Fundamental cycles are edge-disjoint, so the product is exact.
    Exact(ActivationProbability),
    /// Overlapping cycles: only the lift bound and a sampled estimate.
    Estimated {
        lift_bound: Rational,
        estimate: f64,
        std_error: f64,
        trials: u64,
    },
}

pub fn structure_prob(
    h: &HarmfulStructure,
    scheme: &CouplingScheme,
    trials: u64,
    seed: u64,
) -> Result<StructureProbability> {
    let z = scheme.lifting_degree();
    let lift_bound = lift_prob_bound(h, z)?;
    let all_edges: Vec<(usize, usize)> = h.cycles().iter().flat_map(|c| c.edges()).collect();
    let seen: std::collections::BTreeSet<(usize, usize)> = all_edges.iter().copied().collect();
    let disjoint = seen.len() == all_edges.len();
    if disjoint {
        let mut spread = Rational::one();
        let mut lift = Rational::one();
        for c in h.cycles() {
            spread *= spreading_prob_exact(c, scheme)?;
            lift *= lift_prob_exact(c, z)?;
        }
        return Ok(StructureProbability::Exact(ActivationProbability {
            joint: &spread * &lift,
            spread,
            lift,
            lift_bound,
        }));
    }
    let edges: Vec<(usize, usize)> = seen.into_iter().collect();
    let (weights, den) = integer_weights(scheme.probs());
    let den: u64 = den
        .try_into()
        .map_err(|_| Error::InvalidScheme("denominator too large".into()))?;
    let weights: Vec<u64> = weights.into_iter().map(|w| w.try_into().unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut part = std::collections::BTreeMap::new();
    let mut shift = std::collections::BTreeMap::new();
    for _ in 0..trials {
        for &e in &edges {
            let mut r = rng.gen_range(0..den);
            let mut idx = 0;
            while r >= weights[idx] {
                r -= weights[idx];
                idx += 1;
            }
            part.insert(e, scheme.pattern()[idx]);
            shift.insert(e, rng.gen_range(0..z) as i64);
        }
        let active = h.cycles().iter().all(|c| {
            let s: i64 = c.coeffs().iter().map(|(e, k)| k * part[e]).sum();
            let l: i64 = c.coeffs().iter().map(|(e, k)| k * shift[e]).sum();
            s == 0 && l.rem_euclid(z as i64) == 0
        });
        hits += active as u64;
    }
    let p = hits as f64 / trials.max(1) as f64;
    Ok(StructureProbability::Estimated {
        lift_bound,
        estimate: p,
        std_error: (p * (1.0 - p) / trials.max(1) as f64).sqrt(),
        trials,
    })
}

/// CSV with one row per candidate: exact values as `num/den` plus float columns.
pub fn activation_report_csv(set: &CandidateSet, scheme: &CouplingScheme) -> Result<String> {
    let probs = joint_probs(set, scheme)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "key",
        "two_g",
        "spread",
        "lift",
        "lift_bound",
        "joint",
        "spread_f64",
        "lift_f64",
        "lift_bound_f64",
        "joint_f64",
    ])
    .map_err(|e| Error::Io(e.to_string()))?;
    for (c, p) in set.candidates().iter().zip(&probs) {
        let capped = if p.lift_bound > Rational::one() {
            Rational::one()
        } else {
            p.lift_bound.clone()
        };
        w.write_record([
            c.key().to_string(),
            c.length().to_string(),
            rational::format(&p.spread),
            rational::format(&p.lift),
            rational::format(&capped),
            rational::format(&p.joint),
            rational::to_f64(&p.spread).to_string(),
            rational::to_f64(&p.lift).to_string(),
            rational::to_f64(&capped).to_string(),
            rational::to_f64(&p.joint).to_string(),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}
