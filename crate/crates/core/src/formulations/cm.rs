use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, Graph, UnionFind, VertexId};
use crate::lp::{is_feasible, LinearProgram, Relation};
use crate::scalar::Scalar;

use super::{add_cycle_cover_distance, add_ge_row, build_orientation, x_lp};

/// What an H-vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HOrigin {
    Original(VertexId),
    Root,
    /// `a_e` (`side == 0`, next to the first endpoint) or `b_e` (`side == 1`).
    Pivot { edge: EdgeId, side: u8 },
    Terminal(EdgeId),
}

/// Subset FVS instance obtained from an FVS instance `G`: each edge `uv`
/// becomes the path `u, a_e, s_e, b_e, v` and an infinite-cost pendant root
/// `r` hangs off vertex 0.
///
/// Numbering: originals keep their ids, `r = n`, and edge `e` contributes
/// `a_e = n+1+3e`, `s_e = n+2+3e`, `b_e = n+3+3e`.
#[derive(Clone, Debug)]
pub struct SfvsInstance<T: Scalar> {
    pub g: Graph<T>,
    pub h: Graph<T>,
    pub root: VertexId,
    pub origin: Vec<HOrigin>,
}

pub fn reduce_fvs_to_sfvs<T: Scalar>(g: &Graph<T>) -> Result<SfvsInstance<T>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("the root needs a vertex to attach to".into()));
    }
    let root = n;
    let mut edges = vec![(0, root)];
    let mut costs: Vec<Cost<T>> = g.costs().to_vec();
    costs.push(Cost::Infinite);
    let mut origin: Vec<HOrigin> = (0..n).map(HOrigin::Original).collect();
    origin.push(HOrigin::Root);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let a = n + 1 + 3 * e;
        edges.extend([(u, a), (a, a + 1), (a + 1, a + 2), (a + 2, v)]);
        costs.extend([Cost::Infinite, Cost::Infinite, Cost::Infinite]);
        origin.extend([
            HOrigin::Pivot { edge: e, side: 0 },
            HOrigin::Terminal(e),
            HOrigin::Pivot { edge: e, side: 1 },
        ]);
    }
    let h = Graph::new(origin.len(), edges, costs)?;
    let inst = SfvsInstance { g: g.clone(), h, root, origin };
    inst.check_properties()?;
    Ok(inst)
}

impl<T: Scalar> SfvsInstance<T> {
    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn m(&self) -> usize {
        self.g.m()
    }

    /// The extra label `e_r`.
    pub fn root_label(&self) -> usize {
        self.m()
    }

    pub fn terminal(&self, e: EdgeId) -> VertexId {
        self.n() + 2 + 3 * e
    }

    pub fn pivot(&self, e: EdgeId, side: u8) -> VertexId {
        self.n() + 1 + 3 * e + 2 * side as usize
    }

    pub fn terminals(&self) -> Vec<VertexId> {
        (0..self.m()).map(|e| self.terminal(e)).collect()
    }

    pub fn pivots(&self) -> Vec<VertexId> {
        (0..self.m()).flat_map(|e| [self.pivot(e, 0), self.pivot(e, 1)]).collect()
    }

    /// `g(p)`: the original neighbour of a pivot; an original maps to itself.
    pub fn anchor(&self, u: VertexId) -> Option<VertexId> {
        match self.origin[u] {
            HOrigin::Original(v) => Some(v),
            HOrigin::Pivot { edge, side } => {
                let (a, b) = self.g.edge(edge);
                Some(if side == 0 { a } else { b })
            }
            _ => None,
        }
    }

    /// `ℓ_H(u) = δ_G(g(u)) ∪ {e_r}` for originals and pivots, sorted.
    pub fn labels(&self, u: VertexId) -> Vec<usize> {
        let Some(v) = self.anchor(u) else { return Vec::new() };
        let mut out: Vec<usize> = self.g.adj(v).iter().map(|&(_, e)| e).collect();
        out.sort_unstable();
        out.push(self.root_label());
        out
    }

    /// Edges of H not touching a terminal (`Ẽ_H`).
    pub fn non_special_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.h
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| !matches!(self.origin[u], HOrigin::Terminal(_)) && !matches!(self.origin[v], HOrigin::Terminal(_)))
            .collect()
    }

    /// Structural properties the CM LP relies on. Connectivity of H is only
    /// required when G is connected.
    pub fn check_properties(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Certificate(msg));
        let h = &self.h;
        if h.degree(self.root) != 1 || h.cost(self.root).is_finite() {
            return fail("root must be an infinite-cost leaf".into());
        }
        let mut seen_neighbours = vec![false; h.n()];
        for e in 0..self.m() {
            let s = self.terminal(e);
            let nbrs: Vec<VertexId> = h.adj(s).iter().map(|&(w, _)| w).collect();
            if nbrs.len() != 2 || h.cost(s).is_finite() {
                return fail(format!("terminal {s} must be infinite with degree 2"));
            }
            for w in nbrs {
                if h.cost(w).is_finite() || matches!(self.origin[w], HOrigin::Terminal(_)) {
                    return fail(format!("terminal {s} has a bad neighbour {w}"));
                }
                if h.degree(w) != 2 {
                    return fail(format!("pivot {w} must have degree 2"));
                }
                if std::mem::replace(&mut seen_neighbours[w], true) {
                    return fail(format!("terminals share neighbour {w}"));
                }
            }
        }
        if self.g.is_connected() && !h.is_connected() {
            return fail("H must be connected".into());
        }
        Ok(())
    }

    /// Whether `H − set` has no cycle through a terminal. Only vertices of
    /// finite cost may be removed.
    pub fn is_sfvs(&self, set: &[VertexId]) -> bool {
        if set.iter().any(|&v| v >= self.h.n() || !self.h.cost(v).is_finite()) {
            return false;
        }
        let removed = crate::graph::mask_of(self.h.n(), set);
        (0..self.m()).all(|e| {
            let s = self.terminal(e);
            let (a, b) = (self.pivot(e, 0), self.pivot(e, 1));
            let mut uf = UnionFind::new(self.h.n());
            for &(u, v) in self.h.edges() {
                if u != s && v != s && !removed[u] && !removed[v] {
                    uf.union(u, v);
                }
            }
            uf.find(a) != uf.find(b)
        })
    }
}

/// How constraint (4) of the CM LP is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmCycleCover {
    /// Left to cycle cuts on H (see `CutFamily::CmInterestingCycle`).
    Cuts,
    /// Distance formulation on H.
    Distance,
}

/// Column map of the CM block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmLayout {
    /// `x` column per H-vertex: originals and pivots only.
    pub x: Vec<Option<usize>>,
    /// `(label, column)` pairs per H-vertex, sorted by label.
    pub z: Vec<Vec<(usize, usize)>>,
}

impl CmLayout {
    pub fn z(&self, u: VertexId, label: usize) -> Option<usize> {
        self.z[u].iter().find(|&&(l, _)| l == label).map(|&(_, j)| j)
    }
}

#[derive(Clone, Debug)]
pub struct CmLp<T: Scalar> {
    pub lp: LinearProgram<T>,
    pub layout: CmLayout,
}

/// Appends the CM LP for `inst` to an LP whose first `n` columns are the
/// original x-variables. Pivots get an x-column fixed to 0; the root and
/// terminals are substituted (`x = 0`, `z_{r,e_r} = 1`, other `z_r = 0`).
/// Constraint (3) is imposed for both orientations of every edge of `Ẽ_H`.
pub fn add_cm<T: Scalar>(lp: &mut LinearProgram<T>, inst: &SfvsInstance<T>, mode: CmCycleCover) -> CmLayout {
    let h = &inst.h;
    let mut x: Vec<Option<usize>> = vec![None; h.n()];
    for v in 0..inst.n() {
        x[v] = Some(v);
    }
    for p in inst.pivots() {
        let j = lp.add_var(format!("x({p})"), T::zero());
        lp.add_constraint([(j, T::one())], Relation::Eq, T::zero(), format!("cm5[{p}]"));
        x[p] = Some(j);
    }
    let mut z: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h.n()];
    for u in 0..h.n() {
        for label in inst.labels(u) {
            let j = lp.add_var(format!("z({u},{label})"), T::zero());
            z[u].push((label, j));
        }
    }
    let layout = CmLayout { x, z };

    for u in 0..h.n() {
        if let Some(xu) = layout.x[u] {
            let row: Vec<_> =
                std::iter::once((xu, T::one())).chain(layout.z[u].iter().map(|&(_, j)| (j, T::one()))).collect();
            lp.add_constraint(row, Relation::Eq, T::one(), format!("cm1[{u}]"));
        }
    }
    for e in 0..inst.m() {
        let a = layout.z(inst.pivot(e, 0), e).expect("pivot label");
        let b = layout.z(inst.pivot(e, 1), e).expect("pivot label");
        lp.add_constraint([(a, T::one()), (b, T::one())], Relation::Eq, T::one(), format!("cm2[{e}]"));
    }
    // z at the root is the constant [label == e_r]
    let z_term = |u: VertexId, label: usize, sign: T| -> (Option<(usize, T)>, T) {
        if u == inst.root {
            let c = if label == inst.root_label() { sign } else { T::zero() };
            (None, c)
        } else {
            (layout.z(u, label).map(|j| (j, sign)), T::zero())
        }
    };
    for (a, b) in inst.non_special_edges() {
        for (u, v) in [(a, b), (b, a)] {
            for label in 0..=inst.m() {
                let (zu, cu) = z_term(u, label, T::one());
                let (zv, cv) = z_term(v, label, -T::one());
                let mut row: Vec<(usize, T)> = layout.x[u].map(|j| (j, T::one())).into_iter().collect();
                row.extend(zu);
                row.extend(zv);
                let rhs = -(cu + cv);
                if row.is_empty() {
                    debug_assert!(!rhs.is_pos());
                    continue;
                }
                add_ge_row(lp, row, rhs, format!("cm3[{u},{v}][{label}]"));
            }
        }
    }
    if mode == CmCycleCover::Distance {
        add_cycle_cover_distance(lp, h, |v| layout.x[v]);
    }
    layout
}

pub fn build_cm_lp<T: Scalar>(inst: &SfvsInstance<T>, mode: CmCycleCover) -> CmLp<T> {
    let mut lp = x_lp(&inst.g);
    let layout = add_cm(&mut lp, inst, mode);
    CmLp { lp, layout }
}

/// `(x, y)` read off a CM point, `y_{e,u} = z_{u,e}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CmExtract<T: Scalar> {
    pub x: Vec<T>,
    /// `[y(e, first end), y(e, second end)]` per edge of G.
    pub y: Vec<[T; 2]>,
}

impl<T: Scalar> CmExtract<T> {
    /// The point in the column order of `build_orientation`.
    pub fn orientation_point(&self) -> Vec<T> {
        let mut p = self.x.clone();
        for pair in &self.y {
            p.extend(pair.iter().cloned());
        }
        p
    }
}

/// Maps a CM point to `(x, y)` and checks that it lies in `P_orient(G)` and
/// that `x` covers every cycle of G.
pub fn extract_cm_solution<T: Scalar>(inst: &SfvsInstance<T>, layout: &CmLayout, values: &[T]) -> Result<CmExtract<T>> {
    let g = &inst.g;
    let x = values[..g.n()].to_vec();
    let y = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let get = |w: VertexId| values[layout.z(w, e).expect("label of incident edge")].clone();
            [get(u), get(v)]
        })
        .collect();
    let out = CmExtract { x, y };
    if !is_feasible(&build_orientation(g), &out.orientation_point()) {
        return Err(Error::Certificate("extracted (x, y) is outside P_orient".into()));
    }
    if let Some((c, w)) = g.min_weight_cycle(&out.x) {
        if w < T::one() {
            return Err(Error::Certificate(format!("cycle {:?} has x-weight {w} < 1", c.vertices())));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::*;
    use crate::lp::{solve, solve_lexicographic};
    use crate::scalar::{q, Rational};

    type G = Graph<Rational>;

    #[test]
    fn reduction_shapes() {
        let edge = G::with_unit_costs(2, vec![(0, 1)]).unwrap();
        let inst = reduce_fvs_to_sfvs(&edge).unwrap();
        assert_eq!(inst.h.n(), 6);
        assert_eq!(inst.h.m(), 5);
        let k3: G = complete(3);
        let inst = reduce_fvs_to_sfvs(&k3).unwrap();
        assert_eq!(inst.h.n(), 13);
        assert_eq!(inst.terminals().len(), 3);
        assert_eq!(inst.h.enumerate_cycles(13).unwrap().iter().map(|c| c.len()).collect::<Vec<_>>(), [12]);
        let k4: G = complete(4);
        assert_eq!(reduce_fvs_to_sfvs(&k4).unwrap().h.n(), 23);
    }

    #[test]
    fn label_sets() {
        let b: G = butterfly();
        let inst = reduce_fvs_to_sfvs(&b).unwrap();
        assert_eq!(inst.labels(0).len(), 5);
        let mut expect = vec![b.edge_between(0, 1).unwrap(), b.edge_between(1, 2).unwrap()];
        expect.sort_unstable();
        expect.push(b.m());
        assert_eq!(inst.labels(1), expect);
        for e in 0..b.m() {
            let (u, v) = b.edge(e);
            assert_eq!(inst.labels(inst.pivot(e, 0)), inst.labels(u));
            assert_eq!(inst.labels(inst.pivot(e, 1)), inst.labels(v));
        }
        assert!(inst.labels(inst.terminal(0)).is_empty());
        assert!(inst.labels(inst.root).is_empty());
    }

    #[test]
    fn sfvs_matches_fvs() {
        for seed in 0..10 {
            let g: G = erdos_renyi(5, 0.5, seed);
            let inst = reduce_fvs_to_sfvs(&g).unwrap();
            for bits in 0u64..32 {
                let set = crate::graph::bits_to_set(bits);
                assert_eq!(inst.is_sfvs(&set), g.is_fvs(&set), "seed {seed} set {set:?}");
            }
        }
    }

    fn solve_cm(g: &G, mode: CmCycleCover, fix: Option<&[usize]>) -> crate::lp::LpSolution<Rational> {
        let inst = reduce_fvs_to_sfvs(g).unwrap();
        let mut cm = build_cm_lp(&inst, mode);
        if let Some(set) = fix {
            for v in 0..g.n() {
                let val = if set.contains(&v) { q(1, 1) } else { q(0, 1) };
                cm.lp.add_constraint([(v, q(1, 1))], Relation::Eq, val, format!("fix[{v}]"));
            }
        }
        solve_lexicographic(&cm.lp, &[cm.lp.objective.clone()]).unwrap()
    }

    #[test]
    fn triangle_distance_mode() {
        let k3: G = complete(3);
        let sol = solve_cm(&k3, CmCycleCover::Distance, None);
        assert_eq!(sol.objective, q(1, 1));
    }

    #[test]
    fn fvs_indicators_extend_to_cm_points() {
        let cases: Vec<(G, Vec<usize>)> =
            vec![(complete(3), vec![1]), (butterfly(), vec![0]), (complete(4), vec![0, 3]), (path(3), vec![])];
        for (g, set) in cases {
            let sol = solve_cm(&g, CmCycleCover::Cuts, Some(&set));
            assert!(sol.is_optimal(), "{set:?}");
            let inst = reduce_fvs_to_sfvs(&g).unwrap();
            let cm = build_cm_lp(&inst, CmCycleCover::Cuts);
            let ex = extract_cm_solution(&inst, &cm.layout, &sol.values).unwrap();
            assert_eq!(ex.x, (0..g.n()).map(|v| if set.contains(&v) { q(1, 1) } else { q(0, 1) }).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cm_without_cycle_rows_still_implies_orientation() {
        let k4: G = complete(4);
        let inst = reduce_fvs_to_sfvs(&k4).unwrap();
        let cm = build_cm_lp(&inst, CmCycleCover::Cuts);
        let sol = solve(&cm.lp).unwrap();
        let ex = CmExtract {
            x: sol.values[..4].to_vec(),
            y: k4
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| [sol.values[cm.layout.z(u, e).unwrap()].clone(), sol.values[cm.layout.z(v, e).unwrap()].clone()])
                .collect(),
        };
        assert!(is_feasible(&build_orientation(&k4), &ex.orientation_point()));
    }
}
