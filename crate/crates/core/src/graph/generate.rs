//! Deterministic constructions used throughout the tests and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Cost, Graph, VertexId};
use crate::scalar::Scalar;

/// Two triangles `{0,1,2}` and `{0,3,4}` sharing the center `0`.
pub fn butterfly<T: Scalar>() -> Graph<T> {
    Graph::with_unit_costs(5, vec![(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).expect("valid")
}

pub fn complete<T: Scalar>(n: usize) -> Graph<T> {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::with_unit_costs(n, edges).expect("valid")
}

/// `C_n` on `0..n` in order; `n ≥ 3`.
pub fn cycle<T: Scalar>(n: usize) -> Graph<T> {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::with_unit_costs(n, edges).expect("valid")
}

pub fn path<T: Scalar>(n: usize) -> Graph<T> {
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    Graph::with_unit_costs(n, edges).expect("valid")
}

/// Indices of the three special vertices of [`figure1`].
pub fn figure1_special(n: usize) -> [VertexId; 3] {
    [n, n + 1, n + 2]
}

/// `K_n` on `0..n` (cost 1) plus a triangle `u, v, w` (ids `n, n+1, n+2`,
/// infinite cost) with `u` adjacent to every clique vertex.
pub fn figure1<T: Scalar>(n: usize) -> Graph<T> {
    let [u, v, w] = figure1_special(n);
    let mut edges: Vec<(VertexId, VertexId)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    edges.extend((0..n).map(|a| (a, u)));
    edges.extend([(u, v), (v, w), (u, w)]);
    let mut costs = vec![Cost::Finite(T::one()); n];
    costs.extend([Cost::Infinite, Cost::Infinite, Cost::Infinite]);
    Graph::new(n + 3, edges, costs).expect("valid")
}

/// `G(n, p)` with unit costs, driven by a seeded ChaCha stream.
pub fn erdos_renyi<T: Scalar>(n: usize, p: f64, seed: u64) -> Graph<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::with_unit_costs(n, edges).expect("valid")
}

/// Random costs `num/den` with `num ∈ 1..=max_num`, `den ∈ 1..=max_den`.
pub fn random_costs<T: Scalar>(n: usize, max_num: i64, max_den: i64, rng: &mut impl Rng) -> Vec<Cost<T>> {
    (0..n)
        .map(|_| Cost::Finite(T::from_ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))))
        .collect()
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// canonical under the minimum adjacency code over all relabellings.
/// Feasible up to `n = 6`.
pub fn all_graphs<T: Scalar>(n: usize) -> Vec<Graph<T>> {
    assert!(n <= 6, "isomorphism-class enumeration is limited to n ≤ 6");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let code = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().fold(0u64, |acc, (i, &(u, v))| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    let j = pairs.binary_search(&(a, b)).expect("pair");
                    acc | (bits >> i & 1) << j
                })
            })
            .min()
            .unwrap_or(0);
        if code == bits && seen.insert(code) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
            out.push(Graph::with_unit_costs(n, edges).expect("valid"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        let j = if k % 2 == 0 { i } else { 0 };
        p.swap(j, k - 1);
    }
}

/// Connected graphs on `2..=max_n` vertices that are not pseudoforests.
pub fn non_pseudoforest_corpus<T: Scalar>(max_n: usize) -> Vec<Graph<T>> {
    (1..=max_n)
        .flat_map(all_graphs::<T>)
        .filter(|g| g.is_connected() && !g.is_pseudoforest())
        .collect()
}

/// Connected graphs on `3..=max_n` vertices that contain a cycle.
pub fn cyclic_corpus<T: Scalar>(max_n: usize) -> Vec<Graph<T>> {
    (1..=max_n)
        .flat_map(all_graphs::<T>)
        .filter(|g| g.is_connected() && !g.is_acyclic())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn named_graphs() {
        let b: Graph<Rational> = butterfly();
        assert_eq!((b.n(), b.m(), b.degree(0)), (5, 6, 4));
        let f: Graph<Rational> = figure1(4);
        assert_eq!((f.n(), f.m()), (7, 13));
        assert_eq!(f.costs().iter().filter(|c| c.is_finite()).count(), 4);
        assert_eq!(complete::<Rational>(4).m(), 6);
        for n in [6, 8, 10] {
            assert_eq!(figure1::<Rational>(n).m(), n * (n - 1) / 2 + n + 3);
        }
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let a: Graph<Rational> = erdos_renyi(10, 0.5, 7);
        let b: Graph<Rational> = erdos_renyi(10, 0.5, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A000088 and A001349
        let total: Vec<usize> = (1..=5).map(|n| all_graphs::<Rational>(n).len()).collect();
        assert_eq!(total, vec![1, 2, 4, 11, 34]);
        let connected: Vec<usize> =
            (1..=6).map(|n| all_graphs::<Rational>(n).iter().filter(|g| g.is_connected()).count()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn corpus_sizes() {
        // connected graphs per order: 1, 1, 2, 6, 21, 112 (OEIS A001349)
        let connected: Vec<usize> =
            (1..=6).map(|n| all_graphs::<Rational>(n).iter().filter(|g| g.is_connected()).count()).collect();
        assert_eq!(connected, [1, 1, 2, 6, 21, 112]);
        // C3; C4, paw, diamond, K4
        assert_eq!(cyclic_corpus::<Rational>(4).len(), 5);
        // diamond and K4 are the only non-pseudoforests up to 4 vertices
        assert_eq!(non_pseudoforest_corpus::<Rational>(4).len(), 2);
    }
}
