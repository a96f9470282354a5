//! Every polyhedron of the FVS/PFDS study as a [`LinearProgram`].
//!
//! Shared layout: the variable `x(v)` of vertex `v` is always column `v`.
//! Builders that need more variables append them after the `n` x-columns,
//! so parts can be stacked on one LP.

mod cm;
mod distance;
mod orientation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{bits_to_mask, Cost, EdgeId, Graph, VertexId};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Scalar;

pub use cm::{add_cm, build_cm_lp, extract_cm_solution, reduce_fvs_to_sfvs, CmCycleCover, CmExtract, CmLayout, CmLp, HOrigin, SfvsInstance};
pub use distance::{add_cycle_cover_distance, DistanceLayout};
pub use orientation::{
    add_orientation, add_orientation_fvs, build_orientation, build_orientation_fvs, integral_witness_orientation_fvs,
    orientation_fvs_index, y_index, OrientationFvsLayout,
};

/// Which polyhedron a part of a formulation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulationKind {
    StrongDensity,
    WeakDensity,
    WdSubgraphs,
    Orientation,
    /// Cycle cover by separation.
    CycleCover,
    /// Cycle cover by the polynomial distance formulation.
    CycleCoverDistance,
    TwoPtCover,
    OrientationFvs,
    ChekuriMadan,
}

impl FormulationKind {
    pub const ALL: [FormulationKind; 9] = [
        FormulationKind::StrongDensity,
        FormulationKind::WeakDensity,
        FormulationKind::WdSubgraphs,
        FormulationKind::Orientation,
        FormulationKind::CycleCover,
        FormulationKind::CycleCoverDistance,
        FormulationKind::TwoPtCover,
        FormulationKind::OrientationFvs,
        FormulationKind::ChekuriMadan,
    ];

    pub fn flag(self) -> &'static str {
        match self {
            FormulationKind::StrongDensity => "sd",
            FormulationKind::WeakDensity => "wd",
            FormulationKind::WdSubgraphs => "wd-sub",
            FormulationKind::Orientation => "orient",
            FormulationKind::CycleCover => "cc",
            FormulationKind::CycleCoverDistance => "cc-dist",
            FormulationKind::TwoPtCover => "2pt",
            FormulationKind::OrientationFvs => "orient-fvs",
            FormulationKind::ChekuriMadan => "cm",
        }
    }
}

impl fmt::Display for FormulationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

impl FromStr for FormulationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FormulationKind::ALL
            .into_iter()
            .find(|k| k.flag() == s)
            .ok_or_else(|| format!("unknown formulation {s:?}"))
    }
}

/// Constraint families added lazily by a separation oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutFamily {
    CycleCover,
    TwoPseudotree,
    WeakDensity,
    StrongDensity,
    WdSubgraph,
    /// Constraint (4) of the CM LP, separated on the subdivided graph.
    CmInterestingCycle,
}

impl CutFamily {
    pub fn name(self) -> &'static str {
        match self {
            CutFamily::CycleCover => "cycle",
            CutFamily::TwoPseudotree => "two-pseudotree",
            CutFamily::WeakDensity => "weak-density",
            CutFamily::StrongDensity => "strong-density",
            CutFamily::WdSubgraph => "wd-subgraph",
            CutFamily::CmInterestingCycle => "cm-cycle",
        }
    }
}

/// A stacked LP plus the cut families still to be enforced by separation.
#[derive(Clone, Debug)]
pub struct Formulation<T: Scalar> {
    pub lp: LinearProgram<T>,
    pub parts: Vec<FormulationKind>,
    pub cuts: Vec<CutFamily>,
    /// Present when a Chekuri-Madan part was added.
    pub cm: Option<SfvsInstance<T>>,
    /// Number of x-columns (the vertex count).
    pub n: usize,
}

impl<T: Scalar> Formulation<T> {
    /// Objectives to minimize in order: the infinite-cost mass first when
    /// the graph has infinite costs, then the finite costs.
    pub fn objectives(&self, g: &Graph<T>) -> Vec<Vec<T>> {
        cost_objectives(g, self.lp.num_vars())
    }
}

/// `[Σ_{c_v = ∞} x_v, Σ c_v x_v]`, or just the finite row when every cost is
/// finite, padded with zeros to `num_vars`.
pub fn cost_objectives<T: Scalar>(g: &Graph<T>, num_vars: usize) -> Vec<Vec<T>> {
    let mut finite = vec![T::zero(); num_vars];
    let mut infinite = vec![T::zero(); num_vars];
    let mut any = false;
    for v in 0..g.n() {
        match g.cost(v) {
            Cost::Finite(c) => finite[v] = c.clone(),
            Cost::Infinite => {
                infinite[v] = T::one();
                any = true;
            }
        }
    }
    if any {
        vec![infinite, finite]
    } else {
        vec![finite]
    }
}

/// An LP holding only `x(0..n) ≥ 0`, with the finite costs as objective.
pub fn x_lp<T: Scalar>(g: &Graph<T>) -> LinearProgram<T> {
    let mut lp = LinearProgram::new();
    for v in 0..g.n() {
        lp.add_var(format!("x({v})"), g.cost(v).finite_or_zero());
    }
    lp
}

/// Coefficients `d_S(u) − 1` for `u ∈ S`.
pub fn density_row<T: Scalar>(g: &Graph<T>, inside: &[bool]) -> Vec<(VertexId, T)> {
    (0..g.n())
        .filter(|&u| inside[u])
        .map(|u| (u, T::of_i64(g.degree_within(u, inside) as i64 - 1)))
        .collect()
}

/// Adds a `≥` row unless `x ≥ 0` already implies it.
fn add_ge_row<T: Scalar>(lp: &mut LinearProgram<T>, row: Vec<(usize, T)>, rhs: T, tag: String) {
    if !rhs.is_pos() && row.iter().all(|(_, a)| !a.is_neg()) {
        return;
    }
    lp.add_constraint(row, Relation::Ge, rhs, tag);
}

fn set_tag(bits: u64, n: usize) -> String {
    let members: Vec<String> = (0..n).filter(|v| bits >> v & 1 == 1).map(|v| v.to_string()).collect();
    members.join(",")
}

fn check_density_cap<T: Scalar>(g: &Graph<T>, caps: &Caps, what: &'static str) -> Result<()> {
    crate::error::cap(what, caps.density.min(63), g.n())
}

/// Weak density rows `Σ_{u∈S}(d_S(u)−1)x_u ≥ |E[S]| − |S|` for every
/// nonempty `S`, skipping rows implied by `x ≥ 0`.
pub fn add_weak_density<T: Scalar>(lp: &mut LinearProgram<T>, g: &Graph<T>, caps: &Caps) -> Result<()> {
    check_density_cap(g, caps, "weak density enumeration")?;
    for bits in 1u64..(1u64 << g.n()) {
        let inside = bits_to_mask(g.n(), bits);
        let rhs = T::of_i64(g.excess(&inside));
        add_ge_row(lp, density_row(g, &inside), rhs, format!("wd[{}]", set_tag(bits, g.n())));
    }
    Ok(())
}

/// Strong density rows `Σ_{u∈S}(d_S(u)−1)x_u ≥ |E[S]| − |S| + 1` for every
/// `S` with `E[S] ≠ ∅`.
pub fn add_strong_density<T: Scalar>(lp: &mut LinearProgram<T>, g: &Graph<T>, caps: &Caps) -> Result<()> {
    check_density_cap(g, caps, "strong density enumeration")?;
    for bits in 1u64..(1u64 << g.n()) {
        let inside = bits_to_mask(g.n(), bits);
        if g.edges_within(&inside) == 0 {
            continue;
        }
        let rhs = T::of_i64(g.excess(&inside) + 1);
        add_ge_row(lp, density_row(g, &inside), rhs, format!("sd[{}]", set_tag(bits, g.n())));
    }
    Ok(())
}

pub fn build_weak_density<T: Scalar>(g: &Graph<T>, caps: &Caps) -> Result<LinearProgram<T>> {
    let mut lp = x_lp(g);
    add_weak_density(&mut lp, g, caps)?;
    Ok(lp)
}

pub fn build_strong_density<T: Scalar>(g: &Graph<T>, caps: &Caps) -> Result<LinearProgram<T>> {
    let mut lp = x_lp(g);
    add_strong_density(&mut lp, g, caps)?;
    Ok(lp)
}

/// Row `Σ_{u∈Ṽ}(d_G̃(u)−1)x_u ≥ |Ẽ| − |Ṽ|` for the subgraph `G̃ = (Ṽ, Ẽ)`.
pub fn build_wd_subgraphs_constraint<T: Scalar>(
    g: &Graph<T>,
    vertices: &[VertexId],
    edges: &[EdgeId],
) -> Result<(Vec<(VertexId, T)>, T)> {
    let mut inside = vec![false; g.n()];
    for &v in vertices {
        if v >= g.n() {
            return Err(crate::GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
        }
        inside[v] = true;
    }
    let mut chosen = vec![false; g.m()];
    let mut deg = vec![0i64; g.n()];
    for &e in edges {
        if e >= g.m() {
            return Err(Error::Precondition(format!("edge {e} out of range")));
        }
        let (u, v) = g.edge(e);
        if !inside[u] || !inside[v] {
            return Err(Error::Precondition(format!("edge {u}-{v} leaves the vertex set")));
        }
        if std::mem::replace(&mut chosen[e], true) {
            return Err(Error::Precondition(format!("edge {e} repeated")));
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    let n_vt = inside.iter().filter(|&&b| b).count() as i64;
    let row = (0..g.n()).filter(|&u| inside[u]).map(|u| (u, T::of_i64(deg[u] - 1))).collect();
    Ok((row, T::of_i64(edges.len() as i64 - n_vt)))
}

/// Explicit 2-pseudotree cover rows `Σ_{u∈U} x_u ≥ 1` for every `U` with
/// `G[U]` a 2-pseudotree. Exponential; meant for cross-checks.
pub fn add_two_pt_cover_explicit<T: Scalar>(lp: &mut LinearProgram<T>, g: &Graph<T>, caps: &Caps) -> Result<()> {
    crate::error::cap("2-pseudotree enumeration", caps.mc2pt.min(63), g.n())?;
    for bits in 1u64..(1u64 << g.n()) {
        let inside = bits_to_mask(g.n(), bits);
        if is_two_pseudotree(g, &inside) {
            let row = (0..g.n()).filter(|&u| inside[u]).map(|u| (u, T::one())).collect::<Vec<_>>();
            lp.add_constraint(row, Relation::Ge, T::one(), format!("2pt[{}]", set_tag(bits, g.n())));
        }
    }
    Ok(())
}

/// `G[U]` connected with `|E[U]| ≥ |U| + 1`.
pub fn is_two_pseudotree<T: Scalar>(g: &Graph<T>, inside: &[bool]) -> bool {
    g.excess(inside) >= 1 && g.components_within(inside).len() == 1
}

/// Realization choices for [`build`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    pub caps: Caps,
    /// Realize the CM cycle-cover constraint (4) by the distance
    /// formulation instead of cuts.
    pub cm_distance: bool,
}

/// Stacks the requested parts on one LP over the x-columns.
pub fn build<T: Scalar>(g: &Graph<T>, parts: &[FormulationKind], opts: &BuildOptions) -> Result<Formulation<T>> {
    let mut lp = x_lp(g);
    let mut cuts = Vec::new();
    let mut cm_inst = None;
    for &part in parts {
        match part {
            FormulationKind::StrongDensity => add_strong_density(&mut lp, g, &opts.caps)?,
            FormulationKind::WeakDensity => add_weak_density(&mut lp, g, &opts.caps)?,
            FormulationKind::WdSubgraphs => cuts.push(CutFamily::WdSubgraph),
            FormulationKind::Orientation => {
                add_orientation(&mut lp, g);
            }
            FormulationKind::CycleCover => cuts.push(CutFamily::CycleCover),
            FormulationKind::CycleCoverDistance => {
                add_cycle_cover_distance(&mut lp, g, Some);
            }
            FormulationKind::TwoPtCover => cuts.push(CutFamily::TwoPseudotree),
            FormulationKind::OrientationFvs => {
                add_orientation_fvs(&mut lp, g);
            }
            FormulationKind::ChekuriMadan => {
                let inst = reduce_fvs_to_sfvs(g)?;
                let mode = if opts.cm_distance { CmCycleCover::Distance } else { CmCycleCover::Cuts };
                add_cm(&mut lp, &inst, mode);
                if !opts.cm_distance {
                    cuts.push(CutFamily::CmInterestingCycle);
                }
                cm_inst = Some(inst);
            }
        }
    }
    cuts.dedup();
    Ok(Formulation { lp, parts: parts.to_vec(), cuts, cm: cm_inst, n: g.n() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::*;
    use crate::lp::solve;
    use crate::scalar::{q, Rational};

    type G = Graph<Rational>;

    fn row_for(lp: &LinearProgram<Rational>, tag: &str) -> (Vec<(usize, Rational)>, Rational) {
        let c = lp.constraints.iter().find(|c| c.tag == tag).unwrap_or_else(|| panic!("no row {tag}"));
        (c.coeffs.clone(), c.rhs.clone())
    }

    #[test]
    fn weak_density_examples() {
        let b: G = butterfly();
        let lp = build_weak_density(&b, &Caps::default()).unwrap();
        let (row, rhs) = row_for(&lp, "wd[0,1,2,3,4]");
        assert_eq!(row, vec![(0, q(3, 1)), (1, q(1, 1)), (2, q(1, 1)), (3, q(1, 1)), (4, q(1, 1))]);
        assert_eq!(rhs, q(1, 1));
        let k4: G = complete(4);
        let lp = build_weak_density(&k4, &Caps::default()).unwrap();
        let (row, rhs) = row_for(&lp, "wd[0,1,2,3]");
        assert!(row.iter().all(|(_, a)| *a == q(2, 1)));
        assert_eq!(rhs, q(2, 1));
        let tree: G = path(5);
        let lp = build_weak_density(&tree, &Caps::default()).unwrap();
        assert!(crate::lp::is_feasible(&lp, &vec![q(0, 1); 5]));
        assert!(build_weak_density(&complete::<Rational>(19), &Caps::default()).is_err());
    }

    #[test]
    fn strong_density_examples() {
        let k3: G = complete(3);
        let lp = build_strong_density(&k3, &Caps::default()).unwrap();
        let (row, rhs) = row_for(&lp, "sd[0,1,2]");
        assert!(row.iter().all(|(_, a)| *a == q(1, 1)));
        assert_eq!(rhs, q(1, 1));
        assert!(lp.constraints.iter().all(|c| c.tag != "sd[0,1]"));
        let k4: G = complete(4);
        let lp = build_strong_density(&k4, &Caps::default()).unwrap();
        let (row, rhs) = row_for(&lp, "sd[0,1,2,3]");
        assert!(row.iter().all(|(_, a)| *a == q(2, 1)));
        assert_eq!(rhs, q(3, 1));
        // triangles plus 2Σx ≥ 3 on K4
        assert_eq!(solve(&lp).unwrap().objective, q(3, 2));
    }

    #[test]
    fn wd_subgraph_rows() {
        let k5: G = complete(5);
        let all: Vec<usize> = (0..5).collect();
        let minus: Vec<EdgeId> = (1..10).collect(); // edge 0 is v1v2
        assert_eq!(k5.edge(0), (0, 1));
        let (row, rhs) = build_wd_subgraphs_constraint(&k5, &all, &minus).unwrap();
        assert_eq!(row.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>(), [2, 2, 3, 3, 3].map(|a| q(a, 1)));
        assert_eq!(rhs, q(4, 1));
        let (row, rhs) = build_wd_subgraphs_constraint(&k5, &[0, 1, 2], &[]).unwrap();
        assert!(row.iter().all(|(_, a)| *a == q(-1, 1)));
        assert_eq!(rhs, q(-3, 1));
        let (_, rhs) = build_wd_subgraphs_constraint(&k5, &[0, 1, 2], &[0]).unwrap();
        assert_eq!(rhs, q(-2, 1));
        assert!(build_wd_subgraphs_constraint(&k5, &[0, 2], &[0]).is_err());
    }

    #[test]
    fn kinds_parse_from_flags() {
        for k in FormulationKind::ALL {
            assert_eq!(k.flag().parse::<FormulationKind>().unwrap(), k);
        }
        assert!("xyz".parse::<FormulationKind>().is_err());
    }

    #[test]
    fn infinite_costs_become_a_leading_objective() {
        let f: G = figure1(4);
        let objs = cost_objectives(&f, 7);
        assert_eq!(objs.len(), 2);
        assert_eq!(objs[0][4..], [q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(objs[1][..4], [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(cost_objectives(&complete::<Rational>(3), 3).len(), 1);
    }
}
