//! Dense two-phase primal simplex over any [`Scalar`].
//!
//! Pricing is Dantzig's rule until a run of degenerate pivots, then Bland's
//! rule for the rest of the solve. The ratio test breaks ties by the
//! smallest basic column, so the Bland phase cannot cycle.

use super::{certify, LinearProgram, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    pub bland_after: usize,
    pub max_pivots: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { bland_after: 50, max_pivots: 2_000_000 }
    }
}

pub fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    solve_with_options(lp, std::slice::from_ref(&lp.objective), SolverOptions::default())
}

/// Minimizes `objectives[0]`, then `objectives[1]` over the optimal face of
/// the first, and so on. The answer is a vertex of the original polyhedron.
pub fn solve_lexicographic<T: Scalar>(lp: &LinearProgram<T>, objectives: &[Vec<T>]) -> Result<LpSolution<T>> {
    solve_with_options(lp, objectives, SolverOptions::default())
}

pub fn solve_with_options<T: Scalar>(
    lp: &LinearProgram<T>,
    objectives: &[Vec<T>],
    opts: SolverOptions,
) -> Result<LpSolution<T>> {
    assert!(!objectives.is_empty(), "at least one objective");
    let mut t = match Tableau::feasible(lp, opts)? {
        Ok(t) => t,
        Err(pivots) => return Ok(LpSolution::without_point(LpStatus::Infeasible, pivots)),
    };
    for (k, obj) in objectives.iter().enumerate() {
        if k > 0 {
            t.restrict_to_optimal_face();
        }
        t.set_objective(obj);
        if !t.optimize()? {
            return Ok(LpSolution::without_point(LpStatus::Unbounded, t.pivots));
        }
    }
    let values = t.point();
    let objectives: Vec<T> = objectives.iter().map(|o| super::dot(o, &values)).collect();
    let (tight_rows, tight_bounds) = certify::tight_set(lp, &values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective: objectives[0].clone(),
        objectives,
        values,
        tight_rows,
        tight_bounds,
        pivots: t.pivots,
    })
}

#[derive(Clone)]
pub(crate) struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    banned: Vec<bool>,
    cost: Vec<T>,
    reduced: Vec<T>,
    /// Column of each LP variable, plus the negative part of free variables.
    var_cols: Vec<(usize, Option<usize>)>,
    bland: bool,
    degenerate_run: usize,
    pub(crate) pivots: usize,
    opts: SolverOptions,
}

impl<T: Scalar> Tableau<T> {
    /// Runs phase one. `Ok(Err(pivots))` means the LP is infeasible.
    pub(crate) fn feasible(lp: &LinearProgram<T>, opts: SolverOptions) -> Result<std::result::Result<Self, usize>> {
        let mut ncols = 0;
        let var_cols: Vec<(usize, Option<usize>)> = lp
            .nonnegative
            .iter()
            .map(|&nonneg| {
                let plus = ncols;
                ncols += 1;
                let minus = (!nonneg).then(|| {
                    ncols += 1;
                    ncols - 1
                });
                (plus, minus)
            })
            .collect();

        // Normalize to rhs ≥ 0, preferring `≤` for zero right-hand sides so
        // the slack can start basic.
        let m = lp.constraints.len();
        let mut flips = Vec::with_capacity(m);
        let mut rels = Vec::with_capacity(m);
        for c in &lp.constraints {
            let flip = c.rhs.is_neg() || (c.rhs.is_zero_tol() && c.relation == Relation::Ge);
            flips.push(flip);
            rels.push(match (c.relation, flip) {
                (Relation::Eq, _) => Relation::Eq,
                (r, false) => r,
                (Relation::Ge, true) => Relation::Le,
                (Relation::Le, true) => Relation::Ge,
            });
        }
        let slack_start = ncols;
        let mut slack_col = vec![None; m];
        for i in 0..m {
            if rels[i] != Relation::Eq {
                slack_col[i] = Some(ncols);
                ncols += 1;
            }
        }
        let art_start = ncols;
        let mut art_col = vec![None; m];
        for i in 0..m {
            if rels[i] != Relation::Le {
                art_col[i] = Some(ncols);
                ncols += 1;
            }
        }
        debug_assert!(slack_start <= art_start);

        let mut rows = vec![vec![T::zero(); ncols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let sign = if flips[i] { -T::one() } else { T::one() };
            for (j, a) in &c.coeffs {
                let v = T::mul_ref(a, &sign);
                let (plus, minus) = var_cols[*j];
                if let Some(minus) = minus {
                    rows[i][minus] = -v.clone();
                }
                rows[i][plus] = v;
            }
            rhs.push(T::mul_ref(&c.rhs, &sign));
            match rels[i] {
                Relation::Le => {
                    let s = slack_col[i].expect("slack");
                    rows[i][s] = T::one();
                    basis.push(s);
                }
                Relation::Ge => {
                    rows[i][slack_col[i].expect("surplus")] = -T::one();
                    let a = art_col[i].expect("artificial");
                    rows[i][a] = T::one();
                    basis.push(a);
                }
                Relation::Eq => {
                    let a = art_col[i].expect("artificial");
                    rows[i][a] = T::one();
                    basis.push(a);
                }
            }
        }
        let mut is_basic = vec![false; ncols];
        for &b in &basis {
            is_basic[b] = true;
        }
        let mut t = Tableau {
            rows,
            rhs,
            basis,
            is_basic,
            banned: vec![false; ncols],
            cost: vec![T::zero(); ncols],
            reduced: vec![T::zero(); ncols],
            var_cols,
            bland: false,
            degenerate_run: 0,
            pivots: 0,
            opts,
        };

        if art_start < ncols {
            let mut phase1 = vec![T::zero(); ncols];
            for c in phase1.iter_mut().skip(art_start) {
                *c = T::one();
            }
            t.set_column_costs(phase1);
            let bounded = t.optimize()?;
            debug_assert!(bounded, "phase one is bounded below by zero");
            if t.current_value().is_pos() {
                return Ok(Err(t.pivots));
            }
            for b in t.banned.iter_mut().skip(art_start) {
                *b = true;
            }
            t.drive_out_artificials(art_start);
        }
        Ok(Ok(t))
    }

    fn drive_out_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.banned[j] && !self.rows[i][j].is_zero_tol()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // Redundant row: every structural entry is zero.
                    let b = self.basis.remove(i);
                    self.is_basic[b] = false;
                    self.rows.remove(i);
                    self.rhs.remove(i);
                }
            }
        }
    }

    /// Sets an objective given per LP variable.
    pub(crate) fn set_objective(&mut self, objective: &[T]) {
        let mut cost = vec![T::zero(); self.cost.len()];
        for (j, c) in objective.iter().enumerate() {
            let (plus, minus) = self.var_cols[j];
            cost[plus] = c.clone();
            if let Some(minus) = minus {
                cost[minus] = -c.clone();
            }
        }
        self.set_column_costs(cost);
    }

    fn set_column_costs(&mut self, cost: Vec<T>) {
        let mut reduced = cost.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] -= T::mul_ref(cb, a);
                }
            }
        }
        for &b in &self.basis {
            reduced[b] = T::zero();
        }
        self.cost = cost;
        self.reduced = reduced;
        self.bland = false;
        self.degenerate_run = 0;
    }

    fn current_value(&self) -> T {
        let mut v = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !self.cost[b].is_zero() {
                v += T::mul_ref(&self.cost[b], &self.rhs[i]);
            }
        }
        v
    }

    /// Fixes to zero every nonbasic column whose reduced cost is positive.
    /// Afterwards the reachable points are exactly the optimal face.
    pub(crate) fn restrict_to_optimal_face(&mut self) {
        for j in 0..self.reduced.len() {
            if !self.is_basic[j] && self.reduced[j].is_pos() {
                self.banned[j] = true;
            }
        }
    }

    fn price(&self) -> Option<usize> {
        let candidates =
            (0..self.reduced.len()).filter(|&j| !self.banned[j] && !self.is_basic[j] && self.reduced[j].is_neg());
        if self.bland {
            return candidates.into_iter().next();
        }
        let mut best: Option<usize> = None;
        for j in candidates {
            if best.map_or(true, |b| self.reduced[j].cmp_tol(&self.reduced[b]).is_lt()) {
                best = Some(j);
            }
        }
        best
    }

    fn ratio_test(&self, c: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_pos() {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(k) => {
                    // rhs_i / a_i vs rhs_k / a_k with positive denominators
                    let lhs = T::mul_ref(&self.rhs[i], &self.rows[k][c]);
                    let rhs = T::mul_ref(&self.rhs[k], a);
                    match lhs.cmp_tol(&rhs) {
                        std::cmp::Ordering::Less => i,
                        std::cmp::Ordering::Equal if self.basis[i] < self.basis[k] => i,
                        _ => k,
                    }
                }
            });
        }
        best
    }

    /// Runs simplex iterations on the current objective. Returns false when
    /// the objective is unbounded below.
    pub(crate) fn optimize(&mut self) -> Result<bool> {
        loop {
            let Some(c) = self.price() else {
                return Ok(true);
            };
            let Some(r) = self.ratio_test(c) else {
                return Ok(false);
            };
            if self.pivots >= self.opts.max_pivots {
                return Err(Error::IterationLimit(self.opts.max_pivots));
            }
            if self.rhs[r].is_zero_tol() {
                self.degenerate_run += 1;
                if self.degenerate_run >= self.opts.bland_after {
                    self.bland = true;
                }
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, c);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let mut prow = std::mem::take(&mut self.rows[r]);
        let p = prow[c].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        if !p.is_one() {
            for &j in &nz {
                prow[j] /= &p;
            }
            self.rhs[r] /= &p;
        }
        prow[c] = T::one();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] -= T::mul_ref(&f, &prow[j]);
            }
            row[c] = T::zero();
            self.rhs[i] -= T::mul_ref(&f, &prhs);
        }
        let f = self.reduced[c].clone();
        if !f.is_zero() {
            for &j in &nz {
                self.reduced[j] -= T::mul_ref(&f, &prow[j]);
            }
        }
        self.reduced[c] = T::zero();
        self.rows[r] = prow;
        self.is_basic[self.basis[r]] = false;
        self.is_basic[c] = true;
        self.basis[r] = c;
    }

    /// Current basic solution mapped back to LP variables.
    pub(crate) fn point(&self) -> Vec<T> {
        let mut col = vec![T::zero(); self.cost.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            col[b] = self.rhs[i].clone();
        }
        self.var_cols
            .iter()
            .map(|&(plus, minus)| match minus {
                Some(m) => col[plus].clone() - &col[m],
                None => col[plus].clone(),
            })
            .collect()
    }
}
