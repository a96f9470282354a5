use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, UnionFind, VertexId};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Scalar;

use super::x_lp;

/// Column of `y(e,u)` in an orientation block starting at `base`.
pub fn y_index<T: Scalar>(g: &Graph<T>, base: usize, e: EdgeId, u: VertexId) -> usize {
    let (a, b) = g.edge(e);
    debug_assert!(u == a || u == b, "{u} is not an endpoint of edge {e}");
    base + 2 * e + usize::from(u == b)
}

/// Appends `y(e,u) ≥ 0` for every edge end, the coverage rows
/// `x_u + x_v + y_{e,u} + y_{e,v} ≥ 1` and the capacity rows
/// `x_u + Σ_{e∈δ(u)} y_{e,u} ≤ 1`. Returns the first y-column.
pub fn add_orientation<T: Scalar>(lp: &mut LinearProgram<T>, g: &Graph<T>) -> usize {
    let base = lp.num_vars();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        lp.add_var(format!("y({e},{u})"), T::zero());
        lp.add_var(format!("y({e},{v})"), T::zero());
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let row = [u, v, y_index(g, base, e, u), y_index(g, base, e, v)].map(|j| (j, T::one()));
        lp.add_constraint(row, Relation::Ge, T::one(), format!("cover[{e}]"));
    }
    for u in 0..g.n() {
        let mut row = vec![(u, T::one())];
        row.extend(g.adj(u).iter().map(|&(_, e)| (y_index(g, base, e, u), T::one())));
        lp.add_constraint(row, Relation::Le, T::one(), format!("cap[{u}]"));
    }
    base
}

/// `P_orient` with the graph's finite costs on x.
pub fn build_orientation<T: Scalar>(g: &Graph<T>) -> LinearProgram<T> {
    let mut lp = x_lp(g);
    add_orientation(&mut lp, g);
    lp
}

/// Where the `y^f` block of the orientation FVS formulation lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationFvsLayout {
    pub base: usize,
}

/// Column of `y^f(e,u)`.
pub fn orientation_fvs_index<T: Scalar>(g: &Graph<T>, layout: OrientationFvsLayout, f: EdgeId, e: EdgeId, u: VertexId) -> usize {
    y_index(g, layout.base + 2 * g.m() * f, e, u)
}

/// Constraints (9)–(11) with nonnegativity, for every `f ∈ E`:
///
/// * (9)  `x_v + x_w + y^f_{e,v} + y^f_{e,w} ≥ 1` for `e = vw`;
/// * (10) `x_v + Σ_{e=vw} y^f_{e,w} ≥ 1` (y at the far endpoint);
/// * (11) `Σ_{v∉{a,b}} x_v + Σ_{e≠f} (y^f_{e,v} + y^f_{e,w}) ≤ |V| − 2` for `f = ab`.
///
/// Isolated vertices are left out of (10) and (11), which would otherwise
/// force them into every solution; they only get `x_v ≤ 1`.
pub fn add_orientation_fvs<T: Scalar>(lp: &mut LinearProgram<T>, g: &Graph<T>) -> OrientationFvsLayout {
    let layout = OrientationFvsLayout { base: lp.num_vars() };
    let m = g.m();
    for f in 0..m {
        for (e, &(v, w)) in g.edges().iter().enumerate() {
            lp.add_var(format!("y[{f}]({e},{v})"), T::zero());
            lp.add_var(format!("y[{f}]({e},{w})"), T::zero());
        }
    }
    let active: Vec<VertexId> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
        lp.add_constraint([(v, T::one())], Relation::Le, T::one(), format!("iso[{v}]"));
    }
    for f in 0..m {
        let y = |e: EdgeId, u: VertexId| orientation_fvs_index(g, layout, f, e, u);
        for (e, &(v, w)) in g.edges().iter().enumerate() {
            let row = [(v, T::one()), (w, T::one()), (y(e, v), T::one()), (y(e, w), T::one())];
            lp.add_constraint(row, Relation::Ge, T::one(), format!("o9[{f}][{e}]"));
        }
        for &v in &active {
            let mut row = vec![(v, T::one())];
            row.extend(g.adj(v).iter().map(|&(w, e)| (y(e, w), T::one())));
            lp.add_constraint(row, Relation::Ge, T::one(), format!("o10[{f}][{v}]"));
        }
        let (a, b) = g.edge(f);
        let mut row: Vec<(usize, T)> =
            active.iter().filter(|&&v| v != a && v != b).map(|&v| (v, T::one())).collect();
        for (e, &(v, w)) in g.edges().iter().enumerate() {
            if e != f {
                row.push((y(e, v), T::one()));
                row.push((y(e, w), T::one()));
            }
        }
        lp.add_constraint(row, Relation::Le, T::of_usize(active.len()) - T::of_usize(2), format!("o11[{f}]"));
    }
    layout
}

pub fn build_orientation_fvs<T: Scalar>(g: &Graph<T>) -> (LinearProgram<T>, OrientationFvsLayout) {
    let mut lp = x_lp(g);
    let layout = add_orientation_fvs(&mut lp, g);
    (lp, layout)
}

/// The 0/1 `y^f` from the integrality argument, as `[y(e, first end),
/// y(e, second end)]` per edge.
///
/// Takes a spanning forest `T` that contains `f` and every edge avoiding
/// the FVS, roots `f`'s tree at `a` (for `f = ab`) and every other tree at
/// its smallest non-FVS vertex. Each vertex outside `fvs ∪ {a, b}` sets the
/// y at the far end of its parent edge; `y^f_{f,a} = y^f_{f,b} = 1`; each
/// other root points along its first tree edge.
pub fn integral_witness_orientation_fvs<T: Scalar>(g: &Graph<T>, fvs: &[VertexId], f: EdgeId) -> Result<Vec<[bool; 2]>> {
    if f >= g.m() {
        return Err(Error::Precondition(format!("edge {f} out of range")));
    }
    if !g.is_fvs(fvs) {
        return Err(Error::Precondition("not a feedback vertex set".into()));
    }
    let in_s = crate::graph::mask_of(g.n(), fvs);
    let (a, b) = g.edge(f);
    let mut uf = UnionFind::new(g.n());
    let mut tree_adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); g.n()];
    let take = |e: EdgeId, uf: &mut UnionFind, tree_adj: &mut Vec<Vec<(VertexId, EdgeId)>>| {
        let (u, v) = g.edge(e);
        if uf.union(u, v) {
            tree_adj[u].push((v, e));
            tree_adj[v].push((u, e));
        }
    };
    take(f, &mut uf, &mut tree_adj);
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        if !in_s[u] && !in_s[v] {
            take(e, &mut uf, &mut tree_adj);
        }
    }
    for e in 0..g.m() {
        take(e, &mut uf, &mut tree_adj);
    }
    for list in &mut tree_adj {
        list.sort_unstable();
    }

    let mut y = vec![[false; 2]; g.m()];
    let mut set = |e: EdgeId, at: VertexId| {
        let side = usize::from(g.edge(e).1 == at);
        y[e][side] = true;
    };
    set(f, a);
    set(f, b);
    let mut seen = vec![false; g.n()];
    let mut roots = vec![a];
    for comp in g.components() {
        if comp.contains(&a) {
            continue;
        }
        if let Some(&r) = comp.iter().find(|&&v| !in_s[v]) {
            roots.push(r);
        }
    }
    for (k, &root) in roots.iter().enumerate() {
        if k > 0 {
            if let Some(&(c, e)) = tree_adj[root].first() {
                set(e, c);
            }
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(p) = stack.pop() {
            for &(c, e) in &tree_adj[p] {
                if seen[c] {
                    continue;
                }
                seen[c] = true;
                if !in_s[c] && c != a && c != b {
                    set(e, p);
                }
                stack.push(c);
            }
        }
    }
    Ok(y)
}
