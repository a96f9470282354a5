//! Vertex and minimality certificates, optimal-face probing.

use super::simplex::{SolverOptions, Tableau};
use super::{solve_lexicographic, LinearProgram, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rows and nonnegativity bounds satisfied with equality at `point`.
pub fn tight_set<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> (Vec<usize>, Vec<usize>) {
    let rows = (0..lp.constraints.len()).filter(|&i| lp.constraints[i].is_tight(point)).collect();
    let bounds = (0..lp.num_vars()).filter(|&j| lp.nonnegative[j] && point[j].is_zero_tol()).collect();
    (rows, bounds)
}

/// First violated row (as `Ok(i)`) or negative variable (as `Err(j)`).
pub fn feasibility_violation<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> Option<std::result::Result<usize, usize>> {
    assert_eq!(point.len(), lp.num_vars(), "point has the wrong dimension");
    if let Some(j) = (0..lp.num_vars()).find(|&j| lp.nonnegative[j] && point[j].is_neg()) {
        return Some(Err(j));
    }
    (0..lp.constraints.len()).find(|&i| !lp.constraints[i].is_satisfied(point)).map(Ok)
}

pub fn is_feasible<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> bool {
    feasibility_violation(lp, point).is_none()
}

fn require_feasible<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> Result<()> {
    match feasibility_violation(lp, point) {
        None => Ok(()),
        Some(Ok(i)) => Err(Error::Precondition(format!("point violates row {i} ({})", lp.constraints[i].tag))),
        Some(Err(j)) => Err(Error::Precondition(format!("point has {} < 0", lp.names[j]))),
    }
}

/// Rank of a dense matrix by exact Gaussian elimination.
pub fn rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_tol()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero_tol() {
                continue;
            }
            let f = row[c].clone() / &pivot;
            for j in c..ncols {
                if !prow[j].is_zero() {
                    row[j] -= T::mul_ref(&f, &prow[j]);
                }
            }
            row[c] = T::zero();
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Whether the tight rows and bounds at `point` have full column rank.
pub fn is_vertex<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> Result<bool> {
    require_feasible(lp, point)?;
    let (rows, bounds) = tight_set(lp, point);
    // A tight bound x_j = 0 is a unit row, so it removes column j outright.
    let mut fixed = vec![false; lp.num_vars()];
    for &j in &bounds {
        fixed[j] = true;
    }
    let free: Vec<usize> = (0..lp.num_vars()).filter(|&j| !fixed[j]).collect();
    if free.is_empty() {
        return Ok(true);
    }
    let mut col = vec![usize::MAX; lp.num_vars()];
    for (k, &j) in free.iter().enumerate() {
        col[j] = k;
    }
    let dense: Vec<Vec<T>> = rows
        .iter()
        .map(|&i| {
            let mut row = vec![T::zero(); free.len()];
            for (j, a) in &lp.constraints[i].coeffs {
                if col[*j] != usize::MAX {
                    row[col[*j]] = a.clone();
                }
            }
            row
        })
        .filter(|row| row.iter().any(|a| !a.is_zero_tol()))
        .collect();
    Ok(dense.len() >= free.len() && rank(dense) == free.len())
}

/// Whether no single coordinate can be lowered while staying feasible:
/// each variable is at a tight bound, or appears in a tight row that blocks
/// decreasing it alone.
pub fn is_minimal_point<T: Scalar>(lp: &LinearProgram<T>, point: &[T]) -> Result<bool> {
    require_feasible(lp, point)?;
    let (rows, _) = tight_set(lp, point);
    let mut blocked: Vec<bool> = (0..lp.num_vars()).map(|j| lp.nonnegative[j] && point[j].is_zero_tol()).collect();
    for &i in &rows {
        let c = &lp.constraints[i];
        for (j, a) in &c.coeffs {
            blocked[*j] |= match c.relation {
                Relation::Ge => a.is_pos(),
                Relation::Le => a.is_neg(),
                Relation::Eq => true,
            };
        }
    }
    Ok(blocked.into_iter().all(|b| b))
}

/// Range of one coordinate over the optimal face; `max` is `None` when
/// unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateRange<T> {
    pub min: T,
    pub max: Option<T>,
}

impl<T: Scalar> CoordinateRange<T> {
    pub fn is_degenerate(&self) -> bool {
        self.max.as_ref().is_some_and(|m| m.cmp_tol(&self.min).is_eq())
    }
}

/// Min and max of each listed coordinate subject to the constraints and
/// `objective = optimum`. The optimum is a unique point iff every range over
/// all coordinates is degenerate.
pub fn coordinate_range_over_optimal_face<T: Scalar>(
    lp: &LinearProgram<T>,
    coordinates: &[usize],
) -> Result<Vec<CoordinateRange<T>>> {
    let opts = SolverOptions::default();
    let mut t = match Tableau::feasible(lp, opts)? {
        Ok(t) => t,
        Err(_) => return Err(Error::Infeasible),
    };
    t.set_objective(&lp.objective);
    if !t.optimize()? {
        return Err(Error::Unbounded);
    }
    t.restrict_to_optimal_face();
    let mut out = Vec::with_capacity(coordinates.len());
    for &k in coordinates {
        let mut e = vec![T::zero(); lp.num_vars()];
        e[k] = T::one();
        let mut lo = t.clone();
        lo.set_objective(&e);
        let min = if lo.optimize()? { lo.point()[k].clone() } else { return Err(Error::Unbounded) };
        e[k] = -T::one();
        let mut hi = t.clone();
        hi.set_objective(&e);
        let max = if hi.optimize()? { Some(hi.point()[k].clone()) } else { None };
        out.push(CoordinateRange { min, max });
    }
    Ok(out)
}

/// An optimal vertex for `objective` that passes [`is_minimal_point`].
///
/// First minimizes `Σ` of all variables over the optimal face. If that
/// point fails the certificate, perturbs the objective to
/// `objective + ε·1`, halving `ε` until the primary value is unchanged.
pub fn minimal_vertex<T: Scalar>(lp: &LinearProgram<T>, objective: &[T]) -> Result<LpSolution<T>> {
    let ones = vec![T::one(); lp.num_vars()];
    let sol = solve_lexicographic(lp, &[objective.to_vec(), ones.clone()])?;
    if sol.status != LpStatus::Optimal || is_minimal_point(lp, &sol.values)? {
        return Ok(sol);
    }
    let target = sol.objective.clone();
    let two = T::one() + T::one();
    let mut eps = T::one();
    for _ in 0..64 {
        let perturbed: Vec<T> = objective.iter().zip(&ones).map(|(c, o)| c.clone() + T::mul_ref(&eps, o)).collect();
        let cand = solve_lexicographic(lp, &[perturbed])?;
        if cand.status == LpStatus::Optimal {
            let primary = super::dot(objective, &cand.values);
            if primary.cmp_tol(&target).is_eq() && is_minimal_point(lp, &cand.values)? {
                let mut cand = cand;
                cand.objective = primary.clone();
                cand.objectives = vec![primary];
                return Ok(cand);
            }
        }
        eps /= &two;
    }
    Err(Error::Certificate("no certified minimal optimal vertex found".into()))
}

/// Single objective `M·(infinite part) + finite part` with
/// `M = 1 + (n+1)·Σ finite costs`, for cross-checking lexicographic solves.
pub fn big_m_objective<T: Scalar>(infinite: &[T], finite: &[T], n: usize) -> Vec<T> {
    let mut total = T::zero();
    for c in finite {
        total += c;
    }
    let m = T::one() + T::mul_ref(&T::of_usize(n + 1), &total);
    infinite.iter().zip(finite).map(|(a, b)| T::mul_ref(&m, a) + b).collect()
}
