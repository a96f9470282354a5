//! Polyhedral checks: membership, extreme-point scans, the conditional
//! supermodularity of `f_x`, tight-set structure and integrality gaps.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{brute_force, Problem};
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::formulations::{build, build_orientation, BuildOptions, FormulationKind};
use crate::graph::{bits_to_mask, bits_to_set, Cost, Graph, VertexId};
use crate::lp::{
    feasibility_violation, is_minimal_point, is_vertex, minimal_vertex, solve, LinearProgram, LpStatus, Relation,
};
use crate::scalar::{max_of, serde_fraction, serde_fraction_vec, Scalar};
use crate::separation::{
    cutting_plane_solve, separate_2pt_cover, separate_cycle_cover, separate_strong_density, separate_weak_density,
    separate_wd_subgraphs, ViolatedConstraint,
};

mod vertices;

pub use vertices::enumerate_vertices;

/// Why a point is outside a polyhedron.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<T: Scalar> {
    Negative(usize),
    /// A listed row of the formulation, by tag.
    Row { tag: String, lhs: T, rhs: T },
    /// A violated constraint found by a separation oracle.
    Cut(ViolatedConstraint<T>),
    /// The x-part admits no completion of the auxiliary variables.
    NoExtension,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership<T: Scalar> {
    pub member: bool,
    pub violation: Option<Violation<T>>,
}

impl<T: Scalar> Membership<T> {
    fn yes() -> Self {
        Membership { member: true, violation: None }
    }

    fn no(v: Violation<T>) -> Self {
        Membership { member: false, violation: Some(v) }
    }
}

/// Tests `point` against the polyhedron `kind`.
///
/// `point` holds either the x-coordinates only, in which case extended
/// formulations are tested for their projection (an LP in the auxiliaries
/// with x fixed), or every column of the formulation built by
/// [`build`] for `kind`.
pub fn membership<T: Scalar>(g: &Graph<T>, kind: FormulationKind, point: &[T], caps: &Caps) -> Result<Membership<T>> {
    let n = g.n();
    if point.len() < n {
        return Err(Error::Precondition(format!("point has {} coordinates, need at least {n}", point.len())));
    }
    if let Some(j) = point.iter().position(|v| v.is_neg()) {
        return Ok(Membership::no(Violation::Negative(j)));
    }
    let x = &point[..n];
    let cut = match kind {
        FormulationKind::StrongDensity => Some(separate_strong_density(g, x, caps)?),
        FormulationKind::WeakDensity => Some(separate_weak_density(g, x, caps)?),
        FormulationKind::WdSubgraphs => Some(separate_wd_subgraphs(g, x, caps)?),
        FormulationKind::CycleCover => Some(separate_cycle_cover(g, x)?),
        FormulationKind::TwoPtCover => Some(separate_2pt_cover(g, x)?),
        _ => None,
    };
    if let Some(cut) = cut {
        if point.len() != n {
            return Err(Error::Precondition(format!("{kind} has no auxiliary variables")));
        }
        return Ok(cut.map_or_else(Membership::yes, |c| Membership::no(Violation::Cut(c))));
    }
    let opts = BuildOptions { caps: *caps, cm_distance: true };
    let lp = build(g, &[kind], &opts)?.lp;
    if point.len() == lp.num_vars() {
        return Ok(match feasibility_violation(&lp, point) {
            None => Membership::yes(),
            Some(Err(j)) => Membership::no(Violation::Negative(j)),
            Some(Ok(i)) => {
                let c = &lp.constraints[i];
                Membership::no(Violation::Row { tag: c.tag.clone(), lhs: c.lhs(point), rhs: c.rhs.clone() })
            }
        });
    }
    if point.len() != n {
        return Err(Error::Precondition(format!(
            "point has {} coordinates; expected {n} or {}",
            point.len(),
            lp.num_vars()
        )));
    }
    Ok(if extends(&lp, x)? { Membership::yes() } else { Membership::no(Violation::NoExtension) })
}

/// Whether the first `x.len()` columns fixed to `x` leave a feasible system.
pub fn extends<T: Scalar>(lp: &LinearProgram<T>, x: &[T]) -> Result<bool> {
    let mut fixed = lp.clone();
    fixed.objective = vec![T::zero(); lp.num_vars()];
    for (v, value) in x.iter().enumerate() {
        fixed.add_constraint(vec![(v, T::one())], Relation::Eq, value.clone(), format!("fix[{v}]"));
    }
    Ok(solve(&fixed)?.status == LpStatus::Optimal)
}

/// Which bound the largest x-coordinate reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Threshold {
    Half,
    Third,
    Violation,
}

impl Threshold {
    pub fn of<T: Scalar>(max_x: &T) -> Self {
        if max_x.cmp_tol(&T::from_ratio(1, 2)) != Ordering::Less {
            Threshold::Half
        } else if max_x.cmp_tol(&T::from_ratio(1, 3)) != Ordering::Less {
            Threshold::Third
        } else {
            Threshold::Violation
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ExtremePointReport<T: Scalar> {
    pub graph: String,
    pub kind: FormulationKind,
    #[serde(with = "serde_fraction_vec")]
    pub objective: Vec<T>,
    /// Every column of the solved LP; the first `n` are x.
    #[serde(with = "serde_fraction_vec")]
    pub point: Vec<T>,
    pub is_vertex: bool,
    pub is_minimal: bool,
    /// Largest x-coordinate; auxiliaries are not considered.
    #[serde(with = "serde_fraction")]
    pub max_x: T,
    pub threshold: Threshold,
}

impl<T: Scalar> ExtremePointReport<T> {
    /// A WD vertex below 1/3, or a certified minimal vertex of the
    /// orientation polyhedron below 1/3.
    pub fn theorem_violation(&self) -> bool {
        let below = self.threshold == Threshold::Violation;
        match self.kind {
            FormulationKind::WeakDensity => below && self.is_vertex,
            FormulationKind::Orientation => below && self.is_vertex && self.is_minimal,
            _ => false,
        }
    }

    /// An SD vertex whose coordinates all stay below 1/2.
    pub fn conjecture_finding(&self) -> bool {
        self.kind == FormulationKind::StrongDensity && self.is_vertex && self.threshold != Threshold::Half
    }
}

/// One graph of a scan corpus.
#[derive(Clone, Debug)]
pub struct ScanInstance<T: Scalar> {
    pub id: String,
    pub graph: Graph<T>,
}

/// The all-ones vector followed by `random` objectives with entries `p/q`,
/// `1 ≤ p, q ≤ 10`.
pub fn sample_objectives<T: Scalar>(n: usize, random: usize, seed: u64) -> Vec<Vec<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![T::one(); n]];
    for _ in 0..random {
        out.push((0..n).map(|_| T::from_ratio(rng.gen_range(1..=10), rng.gen_range(1..=10))).collect());
    }
    out
}

/// Solves one `(graph, objective)` pair for a vertex optimum and reports it.
///
/// The orientation polyhedron is solved for a certified minimal vertex;
/// every other kind is solved by the cutting-plane driver, whose final basic
/// solution is certified against the final LP.
pub fn scan_one<T: Scalar>(
    inst: &ScanInstance<T>,
    kind: FormulationKind,
    objective: &[T],
    caps: &Caps,
) -> Result<ExtremePointReport<T>> {
    let g = &inst.graph;
    let n = g.n();
    if objective.len() != n || objective.iter().any(|c| c.is_neg()) {
        return Err(Error::Precondition("objective must be nonnegative with one entry per vertex".into()));
    }
    let (lp, values) = if kind == FormulationKind::Orientation {
        let mut lp = build_orientation(g);
        let mut c = objective.to_vec();
        c.resize(lp.num_vars(), T::zero());
        lp.objective = c.clone();
        let sol = minimal_vertex(&lp, &c)?;
        (lp, sol.values)
    } else {
        let weighted = g.with_costs(objective.iter().cloned().map(Cost::Finite).collect())?;
        let formulation = build(&weighted, &[kind], &BuildOptions { caps: *caps, cm_distance: false })?;
        let res = cutting_plane_solve(&weighted, formulation, caps)?;
        if !res.solution.is_optimal() {
            return Err(Error::Precondition(format!("{kind} LP is {:?}", res.solution.status)));
        }
        (res.formulation.lp, res.solution.values)
    };
    let max_x = max_of(&values[..n]).unwrap_or_else(T::zero);
    Ok(ExtremePointReport {
        graph: inst.id.clone(),
        kind,
        objective: objective.to_vec(),
        is_vertex: is_vertex(&lp, &values)?,
        is_minimal: is_minimal_point(&lp, &values)?,
        threshold: Threshold::of(&max_x),
        max_x,
        point: values,
    })
}

/// Reports for every instance and objective, plus the flagged subsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ScanSummary<T: Scalar> {
    pub kind: FormulationKind,
    pub seed: u64,
    pub reports: Vec<ExtremePointReport<T>>,
    /// Indices into `reports`.
    pub theorem_violations: Vec<usize>,
    pub conjecture_findings: Vec<usize>,
}

impl<T: Scalar> ScanSummary<T> {
    /// `Err(Counterexample)` naming the first theorem violation, if any.
    pub fn check_theorems(&self) -> Result<()> {
        match self.theorem_violations.first() {
            None => Ok(()),
            Some(&i) => {
                let r = &self.reports[i];
                Err(Error::Counterexample(format!(
                    "{} vertex of {} on {} has max x = {}",
                    r.kind,
                    r.kind,
                    r.graph,
                    r.max_x.to_fraction_string()
                )))
            }
        }
    }
}

/// Scans every instance with `1 + random_objectives` objectives drawn from a
/// per-instance seed derived from `seed`. Instances run in parallel on the
/// current rayon pool; the output order is deterministic.
pub fn extreme_point_scan<T: Scalar>(
    corpus: &[ScanInstance<T>],
    kind: FormulationKind,
    random_objectives: usize,
    seed: u64,
    caps: &Caps,
) -> Result<ScanSummary<T>> {
    let per_instance: Vec<Result<Vec<ExtremePointReport<T>>>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let objectives = sample_objectives::<T>(inst.graph.n(), random_objectives, seed.wrapping_add(i as u64));
            objectives.iter().map(|c| scan_one(inst, kind, c, caps)).collect()
        })
        .collect();
    let mut reports = Vec::new();
    for r in per_instance {
        reports.extend(r?);
    }
    let theorem_violations = (0..reports.len()).filter(|&i| reports[i].theorem_violation()).collect();
    let conjecture_findings = (0..reports.len()).filter(|&i| reports[i].conjecture_finding()).collect();
    Ok(ScanSummary { kind, seed, reports, theorem_violations, conjecture_findings })
}

/// `f_x(S) = |E[S]| − |S| − Σ_{u∈S}(d_S(u) − 1)x_u`.
pub fn f_x<T: Scalar>(g: &Graph<T>, x: &[T], inside: &[bool]) -> T {
    let mut value = T::of_i64(g.excess(inside));
    for u in (0..g.n()).filter(|&u| inside[u]) {
        let d = T::of_i64(g.degree_within(u, inside) as i64 - 1);
        value -= T::mul_ref(&d, &x[u]);
    }
    value
}

fn f_table<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Vec<T>> {
    cap("tight-set enumeration", caps.tight.min(20), g.n())?;
    if x.len() != g.n() {
        return Err(Error::Precondition(format!("x has {} coordinates, expected {}", x.len(), g.n())));
    }
    Ok((0u64..1 << g.n()).map(|bits| f_x(g, x, &bits_to_mask(g.n(), bits))).collect())
}

fn all_below_half<T: Scalar>(x: &[T]) -> bool {
    let half = T::from_ratio(1, 2);
    x.iter().all(|v| v.cmp_tol(&half) == Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupermodularityReport {
    pub pairs_checked: usize,
    /// Pairs `(A, B)` with `f(A) + f(B) > f(A∩B) + f(A∪B)`.
    pub failures: Vec<(Vec<VertexId>, Vec<VertexId>)>,
}

impl SupermodularityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All pairs `A, B ⊆ V`, with no hypothesis on `x`.
pub fn supermodularity_failures<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<SupermodularityReport> {
    let f = f_table(g, x, caps)?;
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..f.len() {
        for b in a + 1..f.len() {
            pairs_checked += 1;
            let left = f[a].clone() + &f[b];
            let right = f[a & b].clone() + &f[a | b];
            if left.cmp_tol(&right) == Ordering::Greater {
                failures.push((bits_to_set(a as u64), bits_to_set(b as u64)));
            }
        }
    }
    Ok(SupermodularityReport { pairs_checked, failures })
}

/// Supermodularity of `f_x`; requires every `x_u < 1/2`.
pub fn check_supermodularity<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<SupermodularityReport> {
    if !all_below_half(x) {
        return Err(Error::Precondition("supermodularity needs every x_u < 1/2".into()));
    }
    supermodularity_failures(g, x, caps)
}

/// Tight sets of `x`: nonempty `S` with `f_x(S) = 0`, sorted by bitmask.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TightSetFamily<T: Scalar> {
    #[serde(with = "serde_fraction_vec")]
    pub x: Vec<T>,
    pub sets: Vec<Vec<VertexId>>,
}

impl<T: Scalar> TightSetFamily<T> {
    pub fn compute(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<Self> {
        let f = f_table(g, x, caps)?;
        let sets = (1..f.len()).filter(|&s| f[s].is_zero_tol()).map(|s| bits_to_set(s as u64)).collect();
        Ok(TightSetFamily { x: x.to_vec(), sets })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", rename_all = "kebab-case", tag = "status")]
pub enum TightSetCheck<T: Scalar> {
    Checked { family: TightSetFamily<T>, pairs_checked: usize },
    /// Some `x_u ≥ 1/2`; the hypothesis is unmet.
    Skipped { reason: String },
}

fn mask_bits(set: &[VertexId]) -> usize {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

fn crosses<T: Scalar>(g: &Graph<T>, a: usize, b: usize) -> bool {
    let (only_a, only_b) = (a & !b, b & !a);
    g.edges().iter().any(|&(u, v)| {
        (only_a >> u & 1 == 1 && only_b >> v & 1 == 1) || (only_a >> v & 1 == 1 && only_b >> u & 1 == 1)
    })
}

/// Checks the uncrossing and connectivity properties of the tight family of
/// a point of `P_WD` with every `x_u < 1/2`. Any failed property is returned
/// as `Err(Counterexample)`.
pub fn check_tight_set_structure<T: Scalar>(g: &Graph<T>, x: &[T], caps: &Caps) -> Result<TightSetCheck<T>> {
    let n = g.n();
    cap("tight-set structure", caps.tight.min(20), n)?;
    if !all_below_half(x) {
        return Ok(TightSetCheck::Skipped { reason: "some x_u ≥ 1/2".into() });
    }
    let f = f_table(g, x, caps)?;
    if let Some(s) = f.iter().position(|v| v.is_pos()) {
        return Err(Error::Precondition(format!("x violates the weak density row of {:?}", bits_to_set(s as u64))));
    }
    let tight: Vec<usize> = (1..f.len()).filter(|&s| f[s].is_zero_tol()).collect();
    let fail = |what: String| Err(Error::Counterexample(what));
    let coeffs = |s: usize| -> Vec<i64> {
        let inside = bits_to_mask(n, s as u64);
        (0..n).map(|u| if inside[u] { g.degree_within(u, &inside) as i64 - 1 } else { 0 }).collect()
    };
    for &a in &tight {
        let inside = bits_to_mask(n, a as u64);
        if a.count_ones() < 2 || g.components_within(&inside).len() != 1 {
            return fail(format!("tight set {:?} is a singleton or disconnected", bits_to_set(a as u64)));
        }
    }
    let mut pairs_checked = 0;
    for (i, &a) in tight.iter().enumerate() {
        for &b in &tight[i + 1..] {
            pairs_checked += 1;
            let name = || format!("{:?} and {:?}", bits_to_set(a as u64), bits_to_set(b as u64));
            if a & b == 0 {
                return fail(format!("tight sets {} are disjoint", name()));
            }
            if !f[a & b].is_zero_tol() || !f[a | b].is_zero_tol() {
                return fail(format!("intersection or union of {} is not tight", name()));
            }
            if crosses(g, a, b) {
                return fail(format!("an edge crosses between the differences of {}", name()));
            }
            let (ra, rb, ri, ru) = (coeffs(a), coeffs(b), coeffs(a & b), coeffs(a | b));
            if (0..n).any(|u| ra[u] + rb[u] != ri[u] + ru[u]) {
                return fail(format!("row identity fails for {}", name()));
            }
        }
    }
    let sets = tight.iter().map(|&s| bits_to_set(s as u64)).collect();
    Ok(TightSetCheck::Checked { family: TightSetFamily { x: x.to_vec(), sets }, pairs_checked })
}

/// `δ(A − B, B − A) = ∅` for two vertex sets, exposed for tests.
pub fn no_crossing_edges<T: Scalar>(g: &Graph<T>, a: &[VertexId], b: &[VertexId]) -> bool {
    !crosses(g, mask_bits(a), mask_bits(b))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GapReport<T: Scalar> {
    pub problem: Problem,
    pub formulation: Vec<FormulationKind>,
    #[serde(with = "serde_fraction")]
    pub lp_value: T,
    #[serde(with = "serde_fraction")]
    pub ip_value: T,
    /// `ip / lp`; absent when the LP value is 0.
    #[serde(with = "crate::scalar::serde_fraction_opt")]
    pub ratio: Option<T>,
}

/// LP optimum of the stacked formulation `parts` (cutting planes included)
/// against the brute-force optimum of `problem` under the graph's costs.
/// Infinite-cost vertices must be avoidable by both.
pub fn integrality_gap<T: Scalar>(
    g: &Graph<T>,
    problem: Problem,
    parts: &[FormulationKind],
    caps: &Caps,
) -> Result<GapReport<T>> {
    let ip = brute_force(g, problem, caps)?;
    let formulation = build(g, parts, &BuildOptions { caps: *caps, cm_distance: false })?;
    let res = cutting_plane_solve(g, formulation, caps)?;
    if !res.solution.is_optimal() {
        return Err(Error::Precondition(format!("LP is {:?}", res.solution.status)));
    }
    // With infinite costs the first objective is the infinite mass.
    let objectives = &res.solution.objectives;
    if objectives.len() > 1 && objectives[0].is_pos() {
        return Err(Error::NoFiniteSolution);
    }
    let lp_value = objectives.last().cloned().unwrap_or_else(T::zero);
    let ratio = (!lp_value.is_zero_tol()).then(|| ip.value.clone() / &lp_value);
    Ok(GapReport { problem, formulation: parts.to_vec(), lp_value, ip_value: ip.value, ratio })
}
