//! Node-weighted Steiner trees and minimum cost 2-pseudotrees.

use crate::graph::{EdgeId, Graph, VertexId};
use crate::scalar::Scalar;

/// All-pairs node-weighted shortest paths: `dist[u][v]` counts both ends.
struct NodeDistances<T> {
    dist: Vec<Vec<Option<T>>>,
    next: Vec<Vec<usize>>,
}

impl<T: Scalar> NodeDistances<T> {
    fn new(g: &Graph<T>, weights: &[T]) -> Self {
        let n = g.n();
        let mut dist: Vec<Vec<Option<T>>> = vec![vec![None; n]; n];
        let mut next = vec![vec![usize::MAX; n]; n];
        for u in 0..n {
            dist[u][u] = Some(weights[u].clone());
            next[u][u] = u;
            for &(v, _) in g.adj(u) {
                dist[u][v] = Some(weights[u].clone() + &weights[v]);
                next[u][v] = v;
            }
        }
        for k in 0..n {
            for u in 0..n {
                let Some(uk) = dist[u][k].clone() else { continue };
                for v in 0..n {
                    let Some(kv) = &dist[k][v] else { continue };
                    let cand = uk.clone() + kv - &weights[k];
                    if dist[u][v].as_ref().map_or(true, |d| cand.cmp_tol(d).is_lt()) {
                        dist[u][v] = Some(cand);
                        next[u][v] = next[u][k];
                    }
                }
            }
        }
        NodeDistances { dist, next }
    }

    fn path(&self, mut u: usize, v: usize, out: &mut Vec<bool>) {
        out[u] = true;
        while u != v {
            u = self.next[u][v];
            out[u] = true;
        }
    }
}

/// Minimum-weight tree containing every terminal, each vertex weight
/// counted once. Returns the sorted vertex set and its weight, or `None`
/// when the terminals are not connected. Weights must be nonnegative.
///
/// Node-weighted Dreyfus–Wagner: `dp[S][v]` is the cheapest tree spanning
/// `S ∪ {v}`; merging two trees at `v` subtracts `w(v)` once and growing
/// along a path from `u` to `v` subtracts `w(u)`.
pub fn nwst<T: Scalar>(g: &Graph<T>, weights: &[T], terminals: &[VertexId]) -> Option<(Vec<VertexId>, T)> {
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    assert!(!terms.is_empty(), "nwst needs a terminal");
    assert!(terms.len() <= 16, "too many terminals for the subset DP");
    let nd = NodeDistances::new(g, weights);
    let n = g.n();
    let k = terms.len();
    let full = (1usize << k) - 1;
    let mut dp: Vec<Vec<Option<T>>> = vec![vec![None; n]; full + 1];
    // split[S][u]: the part holding the lowest terminal in the merge at u;
    // grow[S][v]: the merge vertex the optimal tree for (S, v) grows from
    let mut split = vec![vec![0usize; n]; full + 1];
    let mut grow = vec![vec![usize::MAX; n]; full + 1];
    for (i, &t) in terms.iter().enumerate() {
        for v in 0..n {
            dp[1 << i][v] = nd.dist[t][v].clone();
        }
    }
    for s in 1..=full {
        if s.count_ones() < 2 {
            continue;
        }
        let low = s & s.wrapping_neg();
        let mut merged: Vec<Option<T>> = vec![None; n];
        for v in 0..n {
            let mut a = (s - 1) & s;
            while a > 0 {
                if a & low != 0 {
                    if let (Some(x), Some(y)) = (&dp[a][v], &dp[s ^ a][v]) {
                        let cand = x.clone() + y - &weights[v];
                        if merged[v].as_ref().map_or(true, |b| cand.cmp_tol(b).is_lt()) {
                            merged[v] = Some(cand);
                            split[s][v] = a;
                        }
                    }
                }
                a = (a - 1) & s;
            }
        }
        for v in 0..n {
            for (u, m) in merged.iter().enumerate() {
                let (Some(mu), Some(d)) = (m, &nd.dist[u][v]) else { continue };
                let cand = mu.clone() + d - &weights[u];
                if dp[s][v].as_ref().map_or(true, |b| cand.cmp_tol(b).is_lt()) {
                    dp[s][v] = Some(cand);
                    grow[s][v] = u;
                }
            }
        }
    }
    let root = terms[0];
    let value = dp[full][root].clone()?;
    let mut inside = vec![false; n];
    let mut stack = vec![(full, root)];
    while let Some((s, v)) = stack.pop() {
        if s.count_ones() == 1 {
            nd.path(terms[s.trailing_zeros() as usize], v, &mut inside);
            continue;
        }
        let u = grow[s][v];
        nd.path(u, v, &mut inside);
        let a = split[s][u];
        stack.push((a, u));
        stack.push((s ^ a, u));
    }
    let set: Vec<VertexId> = (0..n).filter(|&v| inside[v]).collect();
    let weight: T = set.iter().fold(T::zero(), |acc, &v| acc + &weights[v]);
    debug_assert!(weight.cmp_tol(&value).is_eq(), "reconstructed tree weight differs from the DP value");
    Some((set, weight))
}

/// Minimum weight `U` with `G[U]` connected and `|E[U]| ≥ |U| + 1`, over
/// unordered pairs of distinct cyclic edges `e1, e2` and a Steiner tree of
/// their endpoints in `G − {e1, e2}`. Ties go to the lexicographically
/// smallest `U`.
pub fn mc2pt<T: Scalar>(g: &Graph<T>, weights: &[T]) -> Option<(Vec<VertexId>, T)> {
    mc2pt_candidates(g, weights, None).into_iter().next()
}

/// One minimal tree per edge pair, sorted by weight and then by vertex set,
/// deduplicated. With `below = Some(b)` only candidates lighter than `b`
/// are kept.
pub(crate) fn mc2pt_candidates<T: Scalar>(g: &Graph<T>, weights: &[T], below: Option<&T>) -> Vec<(Vec<VertexId>, T)> {
    let cyclic = g.cyclic_edges();
    let mut out: Vec<(Vec<VertexId>, T)> = Vec::new();
    let mut best: Option<T> = None;
    for (i, &e1) in cyclic.iter().enumerate() {
        for &e2 in &cyclic[i + 1..] {
            let (a, b) = g.edge(e1);
            let (c, d) = g.edge(e2);
            let mut terms = vec![a, b, c, d];
            terms.sort_unstable();
            terms.dedup();
            let floor: T = terms.iter().fold(T::zero(), |acc, &v| acc + &weights[v]);
            let bound = match (below, &best) {
                (Some(b), _) => Some(b),
                (None, Some(b)) => Some(b),
                _ => None,
            };
            if bound.is_some_and(|b| floor.cmp_tol(b).is_gt()) {
                continue;
            }
            let h = without_edges(g, &[e1, e2]);
            let Some((set, w)) = nwst(&h, weights, &terms) else { continue };
            if let Some(b) = below {
                if !w.cmp_tol(b).is_lt() {
                    continue;
                }
            }
            if best.as_ref().map_or(true, |b| w.cmp_tol(b).is_lt()) {
                best = Some(w.clone());
            }
            out.push((set, w));
        }
    }
    out.sort_by(|(s1, w1), (s2, w2)| w1.cmp_tol(w2).then_with(|| s1.cmp(s2)));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

fn without_edges<T: Scalar>(g: &Graph<T>, drop: &[EdgeId]) -> Graph<T> {
    let edges = g.edges().iter().enumerate().filter(|(e, _)| !drop.contains(e)).map(|(_, &uv)| uv).collect();
    Graph::new(g.n(), edges, g.costs().to_vec()).expect("subgraph of a valid graph")
}
