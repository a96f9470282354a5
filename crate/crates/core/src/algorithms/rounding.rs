use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulations::build_orientation;
use crate::graph::{Graph, VertexId};
use crate::lp::{minimal_vertex, solve};
use crate::scalar::{serde_fraction, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RoundingStep<T: Scalar> {
    pub picked: VertexId,
    #[serde(with = "serde_fraction")]
    pub x_value: T,
    #[serde(with = "serde_fraction")]
    pub lp_value: T,
    /// The first optimal vertex had no coordinate ≥ 1/3 and a minimal
    /// vertex of the optimal face was used instead.
    pub used_minimal_vertex: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RoundingResult<T: Scalar> {
    /// Deleted vertices (original ids), sorted.
    pub set: Vec<VertexId>,
    #[serde(with = "serde_fraction")]
    pub cost: T,
    /// Orientation LP optimum of the input graph.
    #[serde(with = "serde_fraction")]
    pub lp_lower_bound: T,
    pub steps: Vec<RoundingStep<T>>,
    /// `cost ≤ 3 · lp_lower_bound`, checked exactly.
    pub within_factor_three: bool,
}

/// Index of the largest coordinate that is at least 1/3, lowest index on ties.
fn pick<T: Scalar>(x: &[T]) -> Option<usize> {
    let third = T::from_ratio(1, 3);
    let mut best: Option<usize> = None;
    for (v, val) in x.iter().enumerate() {
        if val.cmp_tol(&third).is_lt() {
            continue;
        }
        if best.map_or(true, |b| val.cmp_tol(&x[b]).is_gt()) {
            best = Some(v);
        }
    }
    best
}

/// Iterative rounding for PFDS over the orientation LP: while the residual
/// graph is not a pseudoforest, take an optimal vertex of
/// `min{c·x : (x, y) ∈ P_orient}`, delete the largest `x_u ≥ 1/3`, repeat.
/// When the returned vertex has no such coordinate, a minimal vertex of the
/// optimal face is computed; if that fails too the run stops with
/// `Error::Counterexample`. Costs must be finite.
pub fn iterative_rounding_pfds<T: Scalar>(g: &Graph<T>) -> Result<RoundingResult<T>> {
    if let Some(v) = (0..g.n()).find(|&v| !g.cost(v).is_finite()) {
        return Err(Error::Precondition(format!("iterative rounding needs finite costs (vertex {v})")));
    }
    let mut remaining: Vec<VertexId> = (0..g.n()).collect();
    let mut set = Vec::new();
    let mut steps = Vec::new();
    let mut lower = None;
    loop {
        let (h, orig) = g.induced_subgraph(&remaining)?;
        if h.is_pseudoforest() {
            break;
        }
        let lp = build_orientation(&h);
        let mut sol = solve(&lp)?;
        if !sol.is_optimal() {
            return Err(Error::Precondition(format!("orientation LP is {:?}", sol.status)));
        }
        lower.get_or_insert_with(|| sol.objective.clone());
        let mut used_minimal_vertex = false;
        let mut choice = pick(&sol.values[..h.n()]);
        if choice.is_none() {
            sol = minimal_vertex(&lp, &lp.objective)?;
            used_minimal_vertex = true;
            choice = pick(&sol.values[..h.n()]);
        }
        let Some(local) = choice else {
            return Err(Error::Counterexample(format!(
                "minimal optimal vertex of P_orient on {:?} has every x below 1/3",
                remaining
            )));
        };
        steps.push(RoundingStep {
            picked: orig[local],
            x_value: sol.values[local].clone(),
            lp_value: sol.objective.clone(),
            used_minimal_vertex,
        });
        set.push(orig[local]);
        remaining.retain(|&v| v != orig[local]);
    }
    set.sort_unstable();
    let cost = set.iter().fold(T::zero(), |acc, &v| acc + g.cost(v).finite_or_zero());
    let lp_lower_bound = lower.unwrap_or_else(T::zero);
    let within_factor_three = cost.cmp_tol(&(T::of_usize(3) * &lp_lower_bound)).is_le();
    Ok(RoundingResult { set, cost, lp_lower_bound, steps, within_factor_three })
}
