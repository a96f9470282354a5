use crate::graph::{EdgeId, Graph, VertexId};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Scalar;

/// Columns of the distance variables: `d(v, k)` for the `k`-th cyclic edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceLayout {
    pub base: usize,
    pub n: usize,
    pub commodities: Vec<EdgeId>,
}

impl DistanceLayout {
    pub fn index(&self, v: VertexId, k: usize) -> usize {
        self.base + k * self.n + v
    }
}

/// Polynomial description of the cycle cover constraints. For every cyclic
/// edge `e = st`: `d^e_s = 0`, `d^e_t + x_s ≥ 1`, and for every other edge
/// `ab` both `d^e_a + x_b ≥ d^e_b` and `d^e_b + x_a ≥ d^e_a`.
///
/// `e` itself is left out of its own commodity: with it, the rows would
/// force `x_s + x_t ≥ 1`, which is not a cycle constraint.
///
/// `x_var(v)` gives the column of `x_v`; `None` means the vertex has weight
/// zero.
pub fn add_cycle_cover_distance<T: Scalar>(
    lp: &mut LinearProgram<T>,
    g: &Graph<T>,
    x_var: impl Fn(VertexId) -> Option<usize>,
) -> DistanceLayout {
    let commodities = g.cyclic_edges();
    let layout = DistanceLayout { base: lp.num_vars(), n: g.n(), commodities };
    for &e in &layout.commodities {
        for v in 0..g.n() {
            lp.add_var(format!("d({v},{e})"), T::zero());
        }
    }
    let term = |v: VertexId| x_var(v).map(|j| (j, T::one()));
    for (k, &e) in layout.commodities.iter().enumerate() {
        let (s, t) = g.edge(e);
        let d = |v: VertexId| layout.index(v, k);
        lp.add_constraint([(d(s), T::one())], Relation::Eq, T::zero(), format!("dist0[{e}]"));
        let row: Vec<_> = std::iter::once((d(t), T::one())).chain(term(s)).collect();
        lp.add_constraint(row, Relation::Ge, T::one(), format!("dist1[{e}]"));
        for (f, &(a, b)) in g.edges().iter().enumerate() {
            if f == e {
                continue;
            }
            for (p, r) in [(a, b), (b, a)] {
                let row: Vec<_> = [(d(p), T::one()), (d(r), -T::one())].into_iter().chain(term(r)).collect();
                lp.add_constraint(row, Relation::Ge, T::zero(), format!("dist[{e}]({p},{r})"));
            }
        }
    }
    layout
}
