#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Shortest cycle by BFS from every vertex, closing on non-tree edges.
/// `cols[j]` lists the rows adjacent to column `j`.
pub fn bfs_girth(cols: &[Vec<usize>], num_rows: usize) -> Option<usize> {
    let n = cols.len();
    let mut adj = vec![Vec::new(); n + num_rows];
    for (j, rows) in cols.iter().enumerate() {
        for &i in rows {
            adj[j].push(n + i);
            adj[n + i].push(j);
        }
    }
    let mut best: Option<usize> = None;
    for root in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Two columns sharing at least two rows.
pub fn has_four_cycle(cols: &[Vec<usize>]) -> bool {
    let sets: Vec<BTreeSet<usize>> = cols.iter().map(|c| c.iter().copied().collect()).collect();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a].intersection(&sets[b]).count() >= 2 {
                return true;
            }
        }
    }
    false
}

/// Dense 0/1 rows to column lists.
pub fn dense_to_cols(dense: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let k = dense.first().map_or(0, Vec::len);
    (0..k)
        .map(|j| (0..dense.len()).filter(|&i| dense[i][j] == 1).collect())
        .collect()
}

// Nodes are (0, col) or (1, row) so columns sort first.
fn orbit_min(seq: &[(u8, usize)]) -> Vec<(u8, usize)> {
    let n = seq.len();
    let rev: Vec<_> = seq.iter().rev().copied().collect();
    let mut best: Option<Vec<(u8, usize)>> = None;
    for s in [seq.to_vec(), rev] {
        for t in 0..n {
            let mut r = s.clone();
            r.rotate_left(t);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap()
}

pub fn key_string(seq: &[(u8, usize)]) -> String {
    orbit_min(seq)
        .iter()
        .map(|&(t, v)| if t == 0 { format!("c{v}") } else { format!("r{v}") })
        .collect::<Vec<_>>()
        .join("-")
}

/// Every closed alternating walk `j1 i1 ... jg ig` over the mask with no
/// immediate reversal (cyclically), optionally node-distinct, keyed by orbit.
pub fn brute_walks(mask: &[Vec<bool>], g: usize, simple: bool) -> BTreeSet<String> {
    let gamma = mask.len();
    let kappa = mask[0].len();
    let total = (kappa * gamma).pow(g as u32);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut x = code;
        let mut steps = Vec::with_capacity(g);
        for _ in 0..g {
            let j = x % kappa;
            x /= kappa;
            let i = x % gamma;
            x /= gamma;
            steps.push((j, i));
        }
        let ok = (0..g).all(|k| {
            let (j, i) = steps[k];
            let (jn, inn) = steps[(k + 1) % g];
            mask[i][j] && mask[i][jn] && jn != j && inn != i
        });
        if !ok {
            continue;
        }
        if simple {
            let cs: BTreeSet<_> = steps.iter().map(|s| s.0).collect();
            let rs: BTreeSet<_> = steps.iter().map(|s| s.1).collect();
            if cs.len() != g || rs.len() != g {
                continue;
            }
        }
        let seq: Vec<(u8, usize)> = steps.iter().flat_map(|&(j, i)| [(0, j), (1, i)]).collect();
        out.insert(key_string(&seq));
    }
    out
}

/// Net coefficient per traversed edge: `+1` on `(i_k, j_k)`, `-1` on `(i_k, j_{k+1})`.
pub fn walk_coeffs(steps: &[(usize, usize)]) -> Vec<((usize, usize), i64)> {
    let g = steps.len();
    let mut acc: Vec<((usize, usize), i64)> = Vec::new();
    let mut add = |e: (usize, usize), v: i64| match acc.iter_mut().find(|(k, _)| *k == e) {
        Some(slot) => slot.1 += v,
        None => acc.push((e, v)),
    };
    for k in 0..g {
        let (j, i) = steps[k];
        let jn = steps[(k + 1) % g].0;
        add((i, j), 1);
        add((i, jn), -1);
    }
    acc
}

/// P(sum c_e X_e = 0) by walking every tuple of pattern values.
pub fn spread_exhaustive(coeffs: &[i64], pattern: &[i64], probs: &[BigRational]) -> BigRational {
    let n = coeffs.len();
    let a = pattern.len();
    let mut total = BigRational::zero();
    for code in 0..a.pow(n as u32) {
        let mut x = code;
        let mut sum = 0i64;
        let mut w = BigRational::one();
        for &c in coeffs {
            let t = x % a;
            x /= a;
            sum += c * pattern[t];
            w *= &probs[t];
        }
        if sum == 0 {
            total += w;
        }
    }
    total
}

/// P(sum c_e L_e = 0 mod z) over all z^n shift tuples.
pub fn lift_exhaustive(coeffs: &[i64], z: u64) -> BigRational {
    let n = coeffs.len() as u32;
    let z = z as usize;
    let count = z.pow(n);
    let mut hits = 0usize;
    for code in 0..count {
        let mut x = code;
        let mut sum = 0i64;
        for &c in coeffs {
            sum += c * (x % z) as i64;
            x /= z;
        }
        if sum.rem_euclid(z as i64) == 0 {
            hits += 1;
        }
    }
    BigRational::new(BigInt::from(hits), BigInt::from(count))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(d-1)^(d-1) / d^d` as an exact rational.
pub fn falling_ratio(d: u32) -> BigRational {
    if d <= 1 {
        return BigRational::one();
    }
    BigRational::new(BigInt::from(d - 1).pow(d - 1), BigInt::from(d).pow(d))
}

/// Pairwise C4 dependency degree on an all-ones base: two distinct rectangles
/// are dependent when they share a cell.
pub fn c4_delta_pairwise(gamma: usize, kappa: usize) -> usize {
    let mut rects = Vec::new();
    for r1 in 0..gamma {
        for r2 in r1 + 1..gamma {
            for c1 in 0..kappa {
                for c2 in c1 + 1..kappa {
                    rects.push([(r1, c1), (r1, c2), (r2, c1), (r2, c2)]);
                }
            }
        }
    }
    let mut max = 0;
    for (a, ra) in rects.iter().enumerate() {
        let deg = rects
            .iter()
            .enumerate()
            .filter(|&(b, rb)| b != a && ra.iter().any(|e| rb.contains(e)))
            .count();
        max = max.max(deg);
    }
    max
}

/// Runs the CLI in-process and returns its exit code.
pub fn qcsc(args: &[&str]) -> i32 {
    qcsc::cli::run(std::iter::once("qcsc").chain(args.iter().copied()))
}

/// Every file in `dir`, sorted by name, with its bytes.
pub fn dir_contents(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}
