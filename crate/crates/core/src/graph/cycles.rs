use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::GraphError;
use crate::scalar::Scalar;

/// A simple cycle, stored canonically: rotated so the smallest vertex comes
/// first, and oriented so the second entry is smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle(Vec<VertexId>);

impl Cycle {
    /// Validates `vertices` as a cycle of `g` and canonicalizes it.
    pub fn new<T: Scalar>(g: &Graph<T>, vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        let k = vertices.len();
        if k < 3 {
            return Err(GraphError::InvalidCycle(format!("length {k} < 3")));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if v >= g.n() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::InvalidCycle(format!("vertex {v} repeated")));
            }
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if g.edge_between(a, b).is_none() {
                return Err(GraphError::InvalidCycle(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(Self::canonical(vertices))
    }

    pub(crate) fn canonical(mut v: Vec<VertexId>) -> Self {
        let pos = (0..v.len()).min_by_key(|&i| v[i]).unwrap_or(0);
        v.rotate_left(pos);
        if v.len() > 2 && v[1] > v[v.len() - 1] {
            v[1..].reverse();
        }
        Cycle(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertex pairs, closing the loop.
    pub fn vertex_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }
}

/// A cycle in which every vertex except possibly `pivot` has degree two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiDisjointCycle {
    pub cycle: Cycle,
    pub pivot: Option<VertexId>,
}

impl<T: Scalar> Graph<T> {
    /// All simple cycles, each once, in canonical form and sorted.
    pub fn enumerate_cycles(&self, cap: usize) -> Result<Vec<Cycle>, GraphError> {
        if self.n() > cap {
            return Err(GraphError::CapExceeded { what: "cycle enumeration", limit: cap, got: self.n() });
        }
        let mut out = Vec::new();
        let mut on_path = vec![false; self.n()];
        for s in 0..self.n() {
            let mut path = vec![s];
            on_path[s] = true;
            self.extend_cycles(s, &mut path, &mut on_path, &mut out);
            on_path[s] = false;
        }
        out.sort();
        Ok(out)
    }

    // Paths from `s` through vertices larger than `s`; each cycle is closed
    // once per direction, and kept when path[1] < last.
    fn extend_cycles(&self, s: VertexId, path: &mut Vec<VertexId>, on_path: &mut [bool], out: &mut Vec<Cycle>) {
        let last = *path.last().expect("path starts at s");
        for &(w, _) in self.adj(last) {
            if w == s {
                if path.len() >= 3 && path[1] < last {
                    out.push(Cycle(path.clone()));
                }
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                self.extend_cycles(s, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    /// First semi-disjoint cycle among the `alive` vertices, degrees taken in
    /// the alive subgraph. Callers prune degree ≤ 1 vertices first.
    pub fn semi_disjoint_cycle_within(&self, alive: &[bool]) -> Option<SemiDisjointCycle> {
        let deg: Vec<usize> =
            (0..self.n()).map(|v| if alive[v] { self.degree_within(v, alive) } else { 0 }).collect();
        let two = |v: VertexId| alive[v] && deg[v] == 2;
        let mut seen = vec![false; self.n()];
        // Walk maximal runs of degree-2 vertices, in order of smallest member.
        for start in 0..self.n() {
            if !two(start) || seen[start] {
                continue;
            }
            let mut run = vec![start];
            seen[start] = true;
            let mut ends = Vec::new();
            for &(first, _) in self.adj(start).iter().filter(|&&(w, _)| alive[w]) {
                let (mut prev, mut cur) = (start, first);
                let mut side = Vec::new();
                while two(cur) && !seen[cur] {
                    seen[cur] = true;
                    side.push(cur);
                    let next = self
                        .adj(cur)
                        .iter()
                        .map(|&(w, _)| w)
                        .find(|&w| alive[w] && w != prev)
                        .expect("degree two");
                    prev = cur;
                    cur = next;
                }
                ends.push((side, cur));
            }
            let (right, right_end) = ends.pop().expect("two sides");
            let (left, left_end) = ends.pop().expect("two sides");
            for v in left.into_iter().rev() {
                run.insert(0, v);
            }
            run.extend(right);
            if two(left_end) && two(right_end) {
                // The walk came back around: an isolated cycle.
                return Some(SemiDisjointCycle { cycle: Cycle::canonical(run), pivot: None });
            }
            if left_end == right_end && run.len() >= 2 {
                run.push(left_end);
                return Some(SemiDisjointCycle { cycle: Cycle::canonical(run), pivot: Some(left_end) });
            }
        }
        None
    }

    pub fn find_semi_disjoint_cycle(&self) -> Option<SemiDisjointCycle> {
        self.semi_disjoint_cycle_within(&vec![true; self.n()])
    }
}

impl<T: Scalar> Graph<T> {
    /// Cheapest `s`–`t` path avoiding edge `skip`, where a path costs the
    /// sum of `weights` over its vertices (both ends included). O(n²)
    /// Dijkstra; ties settle the lowest vertex index first. Weights must be
    /// nonnegative.
    pub fn node_weighted_path(
        &self,
        s: VertexId,
        t: VertexId,
        weights: &[T],
        skip: Option<super::EdgeId>,
    ) -> Option<(Vec<VertexId>, T)> {
        let n = self.n();
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut pred = vec![usize::MAX; n];
        let mut done = vec![false; n];
        dist[s] = Some(weights[s].clone());
        loop {
            let mut best: Option<VertexId> = None;
            for v in 0..n {
                if done[v] {
                    continue;
                }
                if let Some(d) = &dist[v] {
                    if best.map_or(true, |b| d.cmp_tol(dist[b].as_ref().unwrap()).is_lt()) {
                        best = Some(v);
                    }
                }
            }
            let u = best?;
            if u == t {
                break;
            }
            done[u] = true;
            let du = dist[u].clone().unwrap();
            for &(v, e) in self.adj(u) {
                if Some(e) == skip || done[v] {
                    continue;
                }
                let cand = du.clone() + &weights[v];
                if dist[v].as_ref().map_or(true, |d| cand.cmp_tol(d).is_lt()) {
                    dist[v] = Some(cand);
                    pred[v] = u;
                }
            }
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(pred[*path.last().unwrap()]);
        }
        path.reverse();
        Some((path, dist[t].clone().unwrap()))
    }

    /// A cycle minimizing `Σ_{v∈C} weights[v]`, found by closing every
    /// cyclic edge `st` with a cheapest `s`–`t` path in `G − st`. Earlier
    /// edges win ties.
    pub fn min_weight_cycle(&self, weights: &[T]) -> Option<(Cycle, T)> {
        let mut best: Option<(Cycle, T)> = None;
        for e in self.cyclic_edges() {
            let (s, t) = self.edge(e);
            let Some((path, w)) = self.node_weighted_path(s, t, weights, Some(e)) else {
                continue;
            };
            if best.as_ref().map_or(true, |(_, b)| w.cmp_tol(b).is_lt()) {
                best = Some((Cycle::canonical(path), w));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::super::generate::*;
    use super::*;
    use crate::scalar::Rational;

    type G = Graph<Rational>;

    fn brute_semi_disjoint(g: &G) -> Vec<Cycle> {
        g.enumerate_cycles(12)
            .unwrap()
            .into_iter()
            .filter(|c| c.vertices().iter().filter(|&&v| g.degree(v) > 2).count() <= 1)
            .collect()
    }

    #[test]
    fn min_weight_cycle_matches_enumeration() {
        use crate::scalar::q;
        for seed in 0..30 {
            let g: G = erdos_renyi(7, 0.45, seed);
            let w: Vec<Rational> = (0..7).map(|v| q(((v * 7 + seed as i64) % 5) as i64, 3)).collect();
            let brute = g
                .enumerate_cycles(12)
                .unwrap()
                .iter()
                .map(|c| c.vertices().iter().map(|&v| w[v].clone()).sum::<Rational>())
                .min();
            let found = g.min_weight_cycle(&w);
            assert_eq!(found.as_ref().map(|(_, x)| x.clone()), brute, "seed {seed}");
            if let Some((c, x)) = found {
                assert!(Cycle::new(&g, c.vertices().to_vec()).is_ok());
                assert_eq!(c.vertices().iter().map(|&v| w[v].clone()).sum::<Rational>(), x);
            }
        }
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(complete::<Rational>(4).enumerate_cycles(12).unwrap().len(), 7);
        assert_eq!(cycle::<Rational>(5).enumerate_cycles(12).unwrap().len(), 1);
        assert!(path::<Rational>(6).enumerate_cycles(12).unwrap().is_empty());
        // K_n has sum_{k=3}^{n} C(n,k)(k-1)!/2 cycles
        assert_eq!(complete::<Rational>(5).enumerate_cycles(12).unwrap().len(), 10 + 15 + 12);
        assert!(complete::<Rational>(13).enumerate_cycles(12).is_err());
    }

    #[test]
    fn cycle_validation() {
        let k4: G = complete(4);
        let c = Cycle::new(&k4, vec![2, 0, 3]).unwrap();
        assert_eq!(c.vertices(), &[0, 2, 3]);
        assert_eq!(Cycle::new(&k4, vec![3, 1, 0, 2]).unwrap().vertices(), &[0, 1, 3, 2]);
        let c4: G = cycle(4);
        assert!(Cycle::new(&c4, vec![0, 1, 3]).is_err());
        assert!(Cycle::new(&c4, vec![0, 1]).is_err());
    }

    #[test]
    fn semi_disjoint_examples() {
        let k3: G = complete(3);
        let s = k3.find_semi_disjoint_cycle().unwrap();
        assert_eq!((s.cycle.vertices(), s.pivot), (&[0, 1, 2][..], None));
        let b: G = butterfly();
        let s = b.find_semi_disjoint_cycle().unwrap();
        assert_eq!(s.pivot, Some(0));
        assert_eq!(s.cycle.sorted_vertices(), vec![0, 1, 2]);
        assert!(complete::<Rational>(4).find_semi_disjoint_cycle().is_none());
    }

    #[test]
    fn semi_disjoint_agrees_with_enumeration() {
        for seed in 0..200 {
            let g: G = erdos_renyi(8, 0.35, seed).prune_degree_one().graph;
            let found = g.find_semi_disjoint_cycle();
            let brute = brute_semi_disjoint(&g);
            assert_eq!(found.is_some(), !brute.is_empty(), "seed {seed}");
            if let Some(s) = found {
                assert!(brute.contains(&s.cycle), "seed {seed}");
                let high: Vec<_> = s.cycle.vertices().iter().filter(|&&v| g.degree(v) > 2).copied().collect();
                assert_eq!(high, s.pivot.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn cyclic_edges_agree_with_enumeration() {
        for seed in 0..60 {
            let g: G = erdos_renyi(9, 0.3, seed);
            let mut on_cycle = vec![false; g.m()];
            for c in g.enumerate_cycles(12).unwrap() {
                for (a, b) in c.vertex_pairs() {
                    on_cycle[g.edge_between(a, b).unwrap()] = true;
                }
            }
            let expected: Vec<_> = (0..g.m()).filter(|&e| on_cycle[e]).collect();
            assert_eq!(g.cyclic_edges(), expected, "seed {seed}");
        }
    }

    #[test]
    fn pruning_keeps_every_cycle() {
        for seed in 0..60 {
            let g: G = erdos_renyi(9, 0.3, seed);
            let p = g.prune_degree_one();
            let mut mapped: Vec<Cycle> = p
                .graph
                .enumerate_cycles(12)
                .unwrap()
                .into_iter()
                .map(|c| Cycle::canonical(c.vertices().iter().map(|&v| p.kept[v]).collect()))
                .collect();
            mapped.sort();
            assert_eq!(mapped, g.enumerate_cycles(12).unwrap(), "seed {seed}");
        }
    }
}
