use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask_of, Cost, Graph, VertexId};
use crate::scalar::{serde_fraction, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RaiseKind {
    /// `y_S` for the whole residual vertex set, coefficients `d_S(u) − 1`.
    WholeResidual,
    /// `z_C` for a semi-disjoint cycle, coefficients 1.
    SemiDisjointCycle,
}

/// One iteration of the primal-dual loop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Raise<T: Scalar> {
    pub kind: RaiseKind,
    /// `S_i`, sorted.
    pub set: Vec<VertexId>,
    #[serde(with = "serde_fraction")]
    pub amount: T,
    /// The vertex that went tight and joined F.
    pub chosen: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PrimalDualResult<T: Scalar> {
    /// The FVS after reverse delete, sorted.
    pub fvs: Vec<VertexId>,
    pub raises: Vec<Raise<T>>,
    /// Vertices dropped by reverse delete, in processing order.
    pub reverse_deleted: Vec<VertexId>,
    #[serde(with = "serde_fraction")]
    pub primal_cost: T,
    #[serde(with = "serde_fraction")]
    pub dual_value: T,
}

impl<T: Scalar> PrimalDualResult<T> {
    /// Selection order `v_1, …, v_ℓ`.
    pub fn selected(&self) -> Vec<VertexId> {
        self.raises.iter().map(|r| r.chosen).collect()
    }

    pub fn trace_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }
}

/// `|E[S]| − |S|` in G.
fn b_of<T: Scalar>(g: &Graph<T>, inside: &[bool]) -> T {
    T::of_i64(g.excess(inside))
}

/// Coefficient of vertex `u` in the dual row of a raise.
fn coefficient<T: Scalar>(g: &Graph<T>, kind: RaiseKind, inside: &[bool], u: VertexId) -> T {
    match kind {
        RaiseKind::SemiDisjointCycle => T::one(),
        RaiseKind::WholeResidual => T::of_i64(g.degree_within(u, inside) as i64 - 1),
    }
}

/// Primal-dual 2-approximation for FVS over the weak density + cycle cover
/// LP. Each round prunes vertices of degree ≤ 1, raises `z_C` on a
/// semi-disjoint cycle if one exists and `y_S` on the whole residual graph
/// otherwise, until some finite-cost vertex is tight (lowest index on
/// ties). Ends with reverse delete.
pub fn primal_dual_fvs<T: Scalar>(g: &Graph<T>) -> Result<PrimalDualResult<T>> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut load = vec![T::zero(); n];
    let mut raises = Vec::new();
    let mut dual = T::zero();
    loop {
        g.prune_within(&mut alive);
        if !alive.iter().any(|&a| a) {
            break;
        }
        let (kind, set) = match g.semi_disjoint_cycle_within(&alive) {
            Some(sd) => (RaiseKind::SemiDisjointCycle, sd.cycle.sorted_vertices()),
            None => (RaiseKind::WholeResidual, (0..n).filter(|&v| alive[v]).collect::<Vec<_>>()),
        };
        let inside = mask_of(n, &set);
        let mut step: Option<(T, VertexId)> = None;
        for &u in &set {
            let a = coefficient(g, kind, &inside, u);
            assert!(a >= T::one(), "dual coefficient of vertex {u} is {a} after pruning");
            let Cost::Finite(c) = g.cost(u) else { continue };
            let slack = (c.clone() - &load[u]) / a;
            if step.as_ref().map_or(true, |(s, _)| slack.cmp_tol(s).is_lt()) {
                step = Some((slack, u));
            }
        }
        let (eps, chosen) = step.ok_or(Error::NoFiniteSolution)?;
        for &u in &set {
            load[u] += coefficient::<T>(g, kind, &inside, u) * &eps;
        }
        dual += match kind {
            RaiseKind::SemiDisjointCycle => eps.clone(),
            RaiseKind::WholeResidual => b_of(g, &inside) * &eps,
        };
        alive[chosen] = false;
        raises.push(Raise { kind, set, amount: eps, chosen });
    }

    let mut in_f = vec![false; n];
    for r in &raises {
        in_f[r.chosen] = true;
    }
    let mut reverse_deleted = Vec::new();
    for r in raises.iter().rev() {
        in_f[r.chosen] = false;
        if g.is_acyclic_without(&in_f) {
            reverse_deleted.push(r.chosen);
        } else {
            in_f[r.chosen] = true;
        }
    }
    let fvs: Vec<VertexId> = (0..n).filter(|&v| in_f[v]).collect();
    let primal_cost = fvs.iter().fold(T::zero(), |acc, &v| acc + g.cost(v).finite_or_zero());
    Ok(PrimalDualResult { fvs, raises, reverse_deleted, primal_cost, dual_value: dual })
}

/// Outcome of [`verify_certificate`]; every field counts checks that passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub dual_rows_checked: usize,
    pub minimality_checked: usize,
    pub density_bounds_checked: usize,
    pub ratio_checked: bool,
}

/// Re-derives the dual solution from the raises and checks, without
/// trusting the stored totals:
///
/// * (a) dual feasibility, with equality at every selected vertex;
/// * (b) `F_{≥i} ∩ S_i` is a minimal FVS of `G[S_i]` for every round;
/// * (c) `Σ_{v∈F∩S_i}(d_{S_i}(v) − 1) ≤ 2·b(S_i)` for whole-residual rounds;
/// * (d) `cost(F) ≤ 2·dual`.
///
/// Also checks that F is an FVS and that the stored totals match.
pub fn verify_certificate<T: Scalar>(g: &Graph<T>, result: &PrimalDualResult<T>) -> Result<CertificateReport> {
    let fail = |msg: String| Err(Error::Certificate(msg));
    let n = g.n();
    let mut report = CertificateReport::default();
    if !g.is_fvs(&result.fvs) {
        return fail("F is not a feedback vertex set".into());
    }

    let mut load = vec![T::zero(); n];
    let mut dual = T::zero();
    for (i, r) in result.raises.iter().enumerate() {
        if r.amount.is_neg() {
            return fail(format!("round {i} raises by a negative amount"));
        }
        let inside = mask_of(n, &r.set);
        if r.kind == RaiseKind::SemiDisjointCycle && !is_cycle(g, &inside) {
            return fail(format!("round {i}: {:?} does not induce a cycle", r.set));
        }
        for &u in &r.set {
            load[u] += coefficient::<T>(g, r.kind, &inside, u) * &r.amount;
        }
        dual += match r.kind {
            RaiseKind::SemiDisjointCycle => r.amount.clone(),
            RaiseKind::WholeResidual => b_of(g, &inside) * &r.amount,
        };
    }
    let selected = result.selected();
    for u in 0..n {
        if let Cost::Finite(c) = g.cost(u) {
            match load[u].cmp_tol(c) {
                std::cmp::Ordering::Greater => return fail(format!("dual row of vertex {u} exceeds its cost")),
                std::cmp::Ordering::Less if selected.contains(&u) => {
                    return fail(format!("selected vertex {u} is not tight"))
                }
                _ => {}
            }
            report.dual_rows_checked += 1;
        } else if selected.contains(&u) {
            return fail(format!("infinite-cost vertex {u} was selected"));
        }
    }
    if dual.cmp_tol(&result.dual_value).is_ne() {
        return fail(format!("stored dual {} differs from recomputed {dual}", result.dual_value));
    }

    let final_f = mask_of(n, &result.fvs);
    for (i, r) in result.raises.iter().enumerate() {
        let later: Vec<VertexId> = selected[i..].iter().copied().filter(|&v| final_f[v] && r.set.contains(&v)).collect();
        let (sub, orig) = g.induced_subgraph(&r.set)?;
        let local: Vec<VertexId> = later.iter().map(|v| orig.binary_search(v).expect("member of S_i")).collect();
        if !sub.is_fvs(&local) {
            return fail(format!("round {i}: F ∩ S_i is not an FVS of G[S_i]"));
        }
        for k in 0..local.len() {
            let mut smaller = local.clone();
            smaller.remove(k);
            if sub.is_fvs(&smaller) {
                return fail(format!("round {i}: F ∩ S_i is not minimal in G[S_i]"));
            }
        }
        report.minimality_checked += 1;
        if r.kind == RaiseKind::WholeResidual {
            let inside = mask_of(n, &r.set);
            let lhs: i64 = later.iter().map(|&v| g.degree_within(v, &inside) as i64 - 1).sum();
            if lhs > 2 * g.excess(&inside) {
                return fail(format!("round {i}: Σ(d_S − 1) = {lhs} exceeds 2·b(S)"));
            }
            report.density_bounds_checked += 1;
        }
    }

    let cost = result.fvs.iter().fold(T::zero(), |acc, &v| acc + g.cost(v).finite_or_zero());
    if cost.cmp_tol(&result.primal_cost).is_ne() {
        return fail("stored primal cost differs from the cost of F".into());
    }
    if cost.cmp_tol(&(T::of_usize(2) * &dual)).is_gt() {
        return fail(format!("cost {cost} exceeds twice the dual {dual}"));
    }
    report.ratio_checked = true;
    Ok(report)
}

/// `G[S]` is a single cycle.
fn is_cycle<T: Scalar>(g: &Graph<T>, inside: &[bool]) -> bool {
    let k = inside.iter().filter(|&&b| b).count();
    k >= 3
        && (0..g.n()).filter(|&v| inside[v]).all(|v| g.degree_within(v, inside) == 2)
        && g.components_within(inside).len() == 1
}
