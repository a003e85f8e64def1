use std::collections::VecDeque;

use crate::code::SparseMatrix;

/// Shortest cycle length in the Tanner graph of `h`, or `None` for a forest.
///
/// Runs a breadth-first search from every vertex on the bipartite adjacency.
pub fn girth(h: &SparseMatrix) -> Option<usize> {
    let n = h.num_cols();
    let m = h.num_rows();
    // vertices 0..n are columns, n..n+m are rows
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for (j, rows) in h.cols().iter().enumerate() {
        for &i in rows {
            adj[j].push(n + i);
            adj[n + i].push(j);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n + m];
    let mut parent = vec![usize::MAX; n + m];
    let mut touched = Vec::new();
    for root in 0..n + m {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                    if best == 4 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 4 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}
