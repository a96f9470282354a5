//! Simple undirected graphs with (possibly infinite) vertex costs.

mod cycles;
pub mod generate;
mod io;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::scalar::{Rational, Scalar};

pub use cycles::{Cycle, SemiDisjointCycle};
pub use io::{format_graph, parse_graph};

pub type VertexId = usize;
/// Index into [`Graph::edges`].
pub type EdgeId = usize;

/// Vertex cost. `Infinite` marks a vertex that may never be deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cost<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Cost<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }

    /// Finite part, with `Infinite` mapped to zero.
    pub fn finite_or_zero(&self) -> T {
        self.finite().cloned().unwrap_or_else(T::zero)
    }
}

impl<T: Scalar> std::fmt::Display for Cost<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{}", c.to_fraction_string()),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

/// Simple undirected graph. Edges are stored with `u < v`; an edge's
/// identity is its position in the edge list.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<T = Rational> {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    costs: Vec<Cost<T>>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl<T: Scalar> Graph<T> {
    pub fn new(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        costs: Vec<Cost<T>>,
    ) -> Result<Self, GraphError> {
        if costs.len() != n {
            return Err(GraphError::CostLength { expected: n, got: costs.len() });
        }
        for (v, c) in costs.iter().enumerate() {
            if let Cost::Finite(c) = c {
                if c.is_neg() {
                    return Err(GraphError::NegativeCost(v));
                }
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a.max(b), n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u].iter().any(|&(w, _)| w == v) {
                return Err(GraphError::ParallelEdge(u, v));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
            norm.push((u, v));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, costs, adj })
    }

    pub fn with_unit_costs(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        Self::new(n, edges, vec![Cost::Finite(T::one()); n])
    }

    /// Same structure, new costs.
    pub fn with_costs(&self, costs: Vec<Cost<T>>) -> Result<Self, GraphError> {
        Self::new(self.n, self.edges.clone(), costs)
    }

    /// Same structure and costs over another scalar type.
    pub fn convert<U: Scalar>(&self) -> Graph<U> {
        let costs = self
            .costs
            .iter()
            .map(|c| match c {
                Cost::Finite(c) => Cost::Finite(crate::scalar::convert(c)),
                Cost::Infinite => Cost::Infinite,
            })
            .collect();
        Graph::new(self.n, self.edges.clone(), costs).expect("structure already validated")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn costs(&self) -> &[Cost<T>] {
        &self.costs
    }

    pub fn cost(&self, v: VertexId) -> &Cost<T> {
        &self.costs[v]
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor.
    pub fn adj(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Endpoint of `e` other than `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Total cost of a vertex set; `Infinite` if any member is.
    pub fn set_cost(&self, set: &[VertexId]) -> Cost<T> {
        let mut total = T::zero();
        for &v in set {
            match &self.costs[v] {
                Cost::Finite(c) => total += c,
                Cost::Infinite => return Cost::Infinite,
            }
        }
        Cost::Finite(total)
    }

    fn check_vertices(&self, set: &[VertexId]) -> Result<(), GraphError> {
        match set.iter().find(|&&v| v >= self.n) {
            Some(&v) => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// `G[S]` relabelled to `0..|S|` (in increasing order of original id),
    /// together with the map new id → original id.
    pub fn induced_subgraph(&self, set: &[VertexId]) -> Result<(Graph<T>, Vec<VertexId>), GraphError> {
        self.check_vertices(set)?;
        let mut keep: Vec<VertexId> = set.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let costs = keep.iter().map(|&v| self.costs[v].clone()).collect();
        let g = Graph::new(keep.len(), edges, costs)?;
        Ok((g, keep))
    }

    /// `|E[S]|` for a membership mask.
    pub fn edges_within(&self, inside: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| inside[u] && inside[v]).count()
    }

    /// `d_S(v)`: degree of `v` in `G[S]`.
    pub fn degree_within(&self, v: VertexId, inside: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&(w, _)| inside[w]).count()
    }

    /// `b(S) = |E[S]| − |S|`.
    pub fn excess(&self, inside: &[bool]) -> i64 {
        let size = inside.iter().filter(|&&b| b).count();
        self.edges_within(inside) as i64 - size as i64
    }

    /// Connected components among `alive` vertices, each sorted, ordered by
    /// smallest member.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_within(&vec![true; self.n])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `G − removed` has no cycle.
    pub fn is_acyclic_without(&self, removed: &[bool]) -> bool {
        let mut uf = UnionFind::new(self.n);
        self.edges
            .iter()
            .filter(|&&(u, v)| !removed[u] && !removed[v])
            .all(|&(u, v)| uf.union(u, v))
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_acyclic_without(&vec![false; self.n])
    }

    pub fn is_fvs(&self, set: &[VertexId]) -> bool {
        self.is_acyclic_without(&mask_of(self.n, set))
    }

    /// Whether every component of `G − removed` has at most as many edges as
    /// vertices.
    pub fn is_pseudoforest_without(&self, removed: &[bool]) -> bool {
        let alive: Vec<bool> = removed.iter().map(|&r| !r).collect();
        let mut edge_count = vec![0usize; self.n];
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            if alive[u] && alive[v] {
                uf.union(u, v);
            }
        }
        let mut vertex_count = vec![0usize; self.n];
        for v in (0..self.n).filter(|&v| alive[v]) {
            vertex_count[uf.find(v)] += 1;
        }
        for &(u, v) in &self.edges {
            if alive[u] && alive[v] {
                edge_count[uf.find(u)] += 1;
            }
        }
        (0..self.n).all(|r| edge_count[r] <= vertex_count[r])
    }

    pub fn is_pseudoforest(&self) -> bool {
        self.is_pseudoforest_without(&vec![false; self.n])
    }

    pub fn is_pfds(&self, set: &[VertexId]) -> bool {
        self.is_pseudoforest_without(&mask_of(self.n, set))
    }

    /// Repeatedly deletes alive vertices of degree at most one. Returns the
    /// deleted vertices in deletion order.
    pub fn prune_within(&self, alive: &mut [bool]) -> Vec<VertexId> {
        let mut deg: Vec<usize> = (0..self.n)
            .map(|v| if alive[v] { self.degree_within(v, alive) } else { 0 })
            .collect();
        let mut stack: Vec<VertexId> = (0..self.n).filter(|&v| alive[v] && deg[v] <= 1).collect();
        stack.reverse();
        let mut removed = Vec::new();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            removed.push(v);
            for &(w, _) in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        removed
    }

    /// Strips vertices of degree ≤ 1 until none remain. None of the removed
    /// vertices lies on a cycle.
    pub fn prune_degree_one(&self) -> Pruned<T> {
        let mut alive = vec![true; self.n];
        let mut removed = self.prune_within(&mut alive);
        removed.sort_unstable();
        let kept: Vec<VertexId> = (0..self.n).filter(|&v| alive[v]).collect();
        let (graph, _) = self.induced_subgraph(&kept).expect("ids in range");
        Pruned { graph, kept, removed }
    }

    /// Bridges of the graph, by iterative low-link DFS.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next adjacency index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (v, parent_edge, idx) = *top;
                if idx < self.adj[v].len() {
                    top.2 += 1;
                    let (w, e) = self.adj[v][idx];
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(parent)) = (parent_edge, stack.last()) {
                        let p = parent.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `E'`: edges lying on at least one cycle (the non-bridges).
    pub fn cyclic_edges(&self) -> Vec<EdgeId> {
        let bridges = self.bridges();
        (0..self.m()).filter(|e| bridges.binary_search(e).is_err()).collect()
    }

    /// Minimum-cost FVS of a pseudoforest: the cheapest vertex (lowest index
    /// on ties) of every component's unique cycle.
    pub fn pseudoforest_fvs(&self) -> Result<Vec<VertexId>, GraphError> {
        if !self.is_pseudoforest() {
            return Err(GraphError::Precondition("graph is not a pseudoforest".into()));
        }
        let mut alive = vec![true; self.n];
        self.prune_within(&mut alive);
        // What survives pruning is exactly the union of the unique cycles.
        let mut out = Vec::new();
        for cycle in self.components_within(&alive) {
            let mut best: Option<(VertexId, &T)> = None;
            for &v in &cycle {
                if let Cost::Finite(c) = &self.costs[v] {
                    if best.map_or(true, |(_, b)| c.cmp_tol(b).is_lt()) {
                        best = Some((v, c));
                    }
                }
            }
            match best {
                Some((v, _)) => out.push(v),
                None => return Err(GraphError::NoFiniteSolution),
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Output of [`Graph::prune_degree_one`].
#[derive(Clone, Debug)]
pub struct Pruned<T> {
    /// Surviving induced subgraph, relabelled.
    pub graph: Graph<T>,
    /// Original ids of the surviving vertices.
    pub kept: Vec<VertexId>,
    /// Original ids of removed vertices, sorted.
    pub removed: Vec<VertexId>,
}

pub fn mask_of(n: usize, set: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

pub fn members(mask: &[bool]) -> Vec<VertexId> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Bit `v` set ⇔ `v ∈ S`, for enumeration over small vertex sets.
pub fn bits_to_mask(n: usize, bits: u64) -> Vec<bool> {
    (0..n).map(|v| bits >> v & 1 == 1).collect()
}

pub fn bits_to_set(bits: u64) -> Vec<VertexId> {
    (0..64).filter(|v| bits >> v & 1 == 1).collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
