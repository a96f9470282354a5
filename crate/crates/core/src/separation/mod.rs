//! Separation oracles and the cutting-plane driver.
//!
//! Every oracle takes the x-part of a point and returns violated rows of
//! its family, most violated first (largest `rhs − lhs`, then smallest
//! witness).

mod nwst;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::formulations::{build_wd_subgraphs_constraint, density_row, CutFamily, Formulation, SfvsInstance};
use crate::graph::{bits_to_mask, members, Cycle, EdgeId, Graph, VertexId};
use crate::lp::{solve_lexicographic, LpSolution, Relation};
use crate::scalar::Scalar;

pub use nwst::{mc2pt, nwst};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Cycle(Vec<VertexId>),
    VertexSet(Vec<VertexId>),
    Subgraph { vertices: Vec<VertexId>, edges: Vec<EdgeId> },
}

/// A `≥` row violated by the current point: `lhs < rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolatedConstraint<T: Scalar> {
    pub family: CutFamily,
    pub witness: Witness,
    /// Coefficients over LP columns (x-columns are vertex ids).
    pub coeffs: Vec<(usize, T)>,
    pub lhs: T,
    pub rhs: T,
}

impl<T: Scalar> ViolatedConstraint<T> {
    pub fn violation(&self) -> T {
        self.rhs.clone() - &self.lhs
    }

    pub fn tag(&self) -> String {
        let items = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.witness {
            Witness::Cycle(c) => format!("{}[{}]", self.family.name(), items(c)),
            Witness::VertexSet(s) => format!("{}[{}]", self.family.name(), items(s)),
            Witness::Subgraph { vertices, edges } => {
                format!("{}[{}|{}]", self.family.name(), items(vertices), items(edges))
            }
        }
    }

    fn new(family: CutFamily, witness: Witness, coeffs: Vec<(usize, T)>, rhs: T, x: &[T]) -> Self {
        let lhs = coeffs.iter().fold(T::zero(), |acc, (j, a)| acc + T::mul_ref(a, &x[*j]));
        ViolatedConstraint { family, witness, coeffs, lhs, rhs }
    }
}

fn most_violated_first<T: Scalar>(cuts: &mut Vec<ViolatedConstraint<T>>) {
    cuts.sort_by(|a, b| b.violation().cmp_tol(&a.violation()).then_with(|| a.witness.cmp(&b.witness)));
    cuts.dedup_by(|a, b| a.witness == b.witness);
}

fn unit_row<T: Scalar>(set: &[VertexId]) -> Vec<(usize, T)> {
    set.iter().map(|&v| (v, T::one())).collect()
}

fn check_nonnegative<T: Scalar>(x: &[T]) -> Result<()> {
    match x.iter().position(|v| v.is_neg()) {
        Some(v) => Err(Error::Precondition(format!("x[{v}] is negative"))),
        None => Ok(()),
    }
}

/// Cheapest cycle through each cyclic edge, kept when its x-weight is
/// below 1.
pub fn cycle_cover_cuts<T: Scalar>(g: &Graph<T>, x: &[T]) -> Result<Vec<ViolatedConstraint<T>>> {
    check_nonnegative(&x[..g.n()])?;
    let mut out = Vec::new();
    for e in g.cyclic_edges() {
        let (s, t) = g.edge(e);
        let Some((path, w)) = g.node_weighted_path(s, t, &x[..g.n()], Some(e)) else { continue };
        if w < T::one() {
            let c = Cycle::new(g, path)?;
            let row = unit_row(c.vertices());
            out.push(ViolatedConstraint::new(CutFamily::CycleCover, Witness::Cycle(c.vertices().to_vec()), row, T::one(), x));
        }
    }
    most_violated_first(&mut out);
    Ok(out)
}

pub fn separate_cycle_cover<T: Scalar>(g: &Graph<T>, x: &[T]) -> Result<Option<ViolatedConstraint<T>>> {
    Ok(cycle_cover_cuts(g, x)?.into_iter().next())
}

/// Constraint (4) of the CM LP: cycles of H, weighted by x on the original
/// vertices and 0 elsewhere.
pub fn cm_cycle_cuts<T: Scalar>(inst: &SfvsInstance<T>, x: &[T]) -> Result<Vec<ViolatedConstraint<T>>> {
    let n = inst.n();
    check_nonnegative(&x[..n])?;
    let h = &inst.h;
    let mut w = vec![T::zero(); h.n()];
    w[..n].clone_from_slice(&x[..n]);
    let mut out = Vec::new();
    for e in h.cyclic_edges() {
        let (s, t) = h.edge(e);
        let Some((path, weight)) = h.node_weighted_path(s, t, &w, Some(e)) else { continue };
        if weight < T::one() {
            let c = Cycle::new(h, path)?;
            let originals: Vec<VertexId> = c.vertices().iter().copied().filter(|&v| v < n).collect();
            let row = unit_row(&originals);
            out.push(ViolatedConstraint::new(
                CutFamily::CmInterestingCycle,
                Witness::Cycle(c.vertices().to_vec()),
                row,
                T::one(),
                x,
            ));
        }
    }
    most_violated_first(&mut out);
    Ok(out)
}

/// 2-pseudotree cover rows `Σ_{u∈U} x_u ≥ 1` violated by `x`, one per
/// edge pair whose Steiner tree is light enough.
pub fn two_pt_cover_cuts<T: Scalar>(g: &Graph<T>, x: &[T]) -> Result<Vec<ViolatedConstraint<T>>> {
    check_nonnegative(&x[..g.n()])?;
    let one = T::one();
    let mut out: Vec<ViolatedConstraint<T>> = nwst::mc2pt_candidates(g, &x[..g.n()], Some(&one))
        .into_iter()
        .map(|(set, _)| {
            let row = unit_row(&set);
            ViolatedConstraint::new(CutFamily::TwoPseudotree, Witness::VertexSet(set), row, T::one(), x)
        })
        .collect();
    most_violated_first(&mut out);
    Ok(out)
}

pub fn separate_2pt_cover<T: Scalar>(g: &Graph<T>, x: &[T]) -> Result<Option<ViolatedConstraint<T>>> {
    check_nonnegative(&x[..g.n()])?;
    Ok(mc2pt(g, &x[..g.n()]).filter(|(_, w)| *w < T::one()).map(|(set, _)| {
        let row = unit_row(&set);
        ViolatedConstraint::new(CutFamily::TwoPseudotree, Witness::VertexSet(set), row, T::one(), x)
    }))
}

fn density_cuts<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps, strong: bool) -> Result<Vec<ViolatedConstraint<T>>> {
    cap("density separation", caps.density.min(63), g.n())?;
    let family = if strong { CutFamily::StrongDensity } else { CutFamily::WeakDensity };
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << g.n()) {
        let inside = bits_to_mask(g.n(), bits);
        if strong && g.edges_within(&inside) == 0 {
            continue;
        }
        let rhs = T::of_i64(g.excess(&inside) + i64::from(strong));
        let cut = ViolatedConstraint::new(family, Witness::VertexSet(members(&inside)), density_row(g, &inside), rhs, x);
        if cut.lhs < cut.rhs {
            out.push(cut);
        }
    }
    most_violated_first(&mut out);
    Ok(out)
}

/// Weak density rows violated by `x`, by enumeration.
pub fn weak_density_cuts<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Vec<ViolatedConstraint<T>>> {
    density_cuts(g, x, caps, false)
}

pub fn strong_density_cuts<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Vec<ViolatedConstraint<T>>> {
    density_cuts(g, x, caps, true)
}

pub fn separate_weak_density<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Option<ViolatedConstraint<T>>> {
    Ok(weak_density_cuts(g, x, caps)?.into_iter().next())
}

pub fn separate_strong_density<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Option<ViolatedConstraint<T>>> {
    Ok(strong_density_cuts(g, x, caps)?.into_iter().next())
}

/// WD-subgraph rows. For a fixed `Ṽ` the most violated edge set keeps
/// exactly the edges `uv ⊆ Ṽ` with `1 − x_u − x_v > 0`, since the row
/// rearranges to `Σ_{e∈Ẽ}(1 − x_u − x_v) ≤ Σ_{v∈Ṽ}(1 − x_v)`.
pub fn wd_subgraph_cuts<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Vec<ViolatedConstraint<T>>> {
    cap("wd-subgraph separation", caps.density.min(63), g.n())?;
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << g.n()) {
        let inside = bits_to_mask(g.n(), bits);
        let vertices = members(&inside);
        let edges: Vec<EdgeId> = (0..g.m())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                inside[u] && inside[v] && (T::one() - &x[u] - &x[v]).is_pos()
            })
            .collect();
        let (row, rhs) = build_wd_subgraphs_constraint(g, &vertices, &edges)?;
        let cut = ViolatedConstraint::new(CutFamily::WdSubgraph, Witness::Subgraph { vertices, edges }, row, rhs, x);
        if cut.lhs < cut.rhs {
            out.push(cut);
        }
    }
    most_violated_first(&mut out);
    Ok(out)
}

pub fn separate_wd_subgraphs<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Option<ViolatedConstraint<T>>> {
    Ok(wd_subgraph_cuts(g, x, caps)?.into_iter().next())
}

/// One cut-log line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutLogEntry {
    pub iteration: usize,
    pub family: String,
    pub witness: Witness,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug)]
pub struct CuttingPlaneResult<T: Scalar> {
    pub solution: LpSolution<T>,
    /// The LP with every cut that was added.
    pub formulation: Formulation<T>,
    pub log: Vec<CutLogEntry>,
    pub rounds: usize,
}

impl<T: Scalar> CuttingPlaneResult<T> {
    /// The log as JSON lines.
    pub fn log_json_lines(&self) -> String {
        self.log.iter().map(|e| serde_json::to_string(e).expect("log entries serialize") + "\n").collect()
    }
}

/// Cuts added per family and round.
const CUTS_PER_ROUND: usize = 25;

/// All violated rows of one family at `x`, most violated first.
pub fn family_cuts<T: Scalar>(
    g: &Graph<T>,
    family: CutFamily,
    x: &[T],
    cm: Option<&SfvsInstance<T>>,
    caps: &Caps,
) -> Result<Vec<ViolatedConstraint<T>>> {
    match family {
        CutFamily::CycleCover => cycle_cover_cuts(g, x),
        CutFamily::TwoPseudotree => two_pt_cover_cuts(g, x),
        CutFamily::WeakDensity => weak_density_cuts(g, x, caps),
        CutFamily::StrongDensity => strong_density_cuts(g, x, caps),
        CutFamily::WdSubgraph => wd_subgraph_cuts(g, x, caps),
        CutFamily::CmInterestingCycle => {
            let inst = cm.ok_or_else(|| Error::Precondition("CM cuts need the SFVS instance".into()))?;
            cm_cycle_cuts(inst, x)
        }
    }
}

/// Solves the formulation lexicographically (infinite costs first), adds
/// violated rows from every pending family, and repeats until no oracle
/// finds a violation. Cuts are never removed. Stops with
/// `IterationLimit` after `caps.cut_rounds` rounds.
pub fn cutting_plane_solve<T: Scalar>(g: &Graph<T>, mut formulation: Formulation<T>, caps: &Caps) -> Result<CuttingPlaneResult<T>> {
    let objectives = formulation.objectives(g);
    let mut log = Vec::new();
    for round in 0..caps.cut_rounds.max(1) {
        let solution = solve_lexicographic(&formulation.lp, &objectives)?;
        if !solution.is_optimal() {
            return Ok(CuttingPlaneResult { solution, formulation, log, rounds: round + 1 });
        }
        let x = &solution.values[..];
        let mut added = 0;
        for family in formulation.cuts.clone() {
            let cuts = family_cuts(g, family, x, formulation.cm.as_ref(), caps)?;
            for cut in cuts.into_iter().take(CUTS_PER_ROUND) {
                log.push(CutLogEntry {
                    iteration: round,
                    family: family.name().to_string(),
                    witness: cut.witness.clone(),
                    lhs: cut.lhs.to_fraction_string(),
                    rhs: cut.rhs.to_fraction_string(),
                });
                let tag = cut.tag();
                formulation.lp.add_constraint(cut.coeffs, Relation::Ge, cut.rhs, tag);
                added += 1;
            }
        }
        if added == 0 {
            return Ok(CuttingPlaneResult { solution, formulation, log, rounds: round + 1 });
        }
    }
    Err(Error::IterationLimit(caps.cut_rounds))
}

/// `Ordering` of two cuts by the selection rule, exposed for tests.
pub fn cmp_cuts<T: Scalar>(a: &ViolatedConstraint<T>, b: &ViolatedConstraint<T>) -> Ordering {
    b.violation().cmp_tol(&a.violation()).then_with(|| a.witness.cmp(&b.witness))
}
