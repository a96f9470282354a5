//! Exact linear programs: model, two-phase simplex, and point certification.

mod certify;
mod simplex;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::scalar::{Rational, Scalar};

pub use certify::{
    big_m_objective, coordinate_range_over_optimal_face, feasibility_violation, is_feasible, is_minimal_point,
    is_vertex, minimal_vertex, rank, tight_set, CoordinateRange,
};
pub use simplex::{solve, solve_lexicographic, solve_with_options, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }

    /// Whether `lhs REL rhs` holds under the scalar's comparison.
    pub fn holds<T: Scalar>(self, lhs: &T, rhs: &T) -> bool {
        let ord = lhs.cmp_tol(rhs);
        match self {
            Relation::Ge => ord.is_ge(),
            Relation::Le => ord.is_le(),
            Relation::Eq => ord.is_eq(),
        }
    }
}

/// One row `Σ coeffs · x REL rhs`, stored sparsely with sorted, distinct,
/// nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T = Rational> {
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
    /// Which family produced the row, for dumps and cut logs.
    pub tag: String,
}

impl<T: Scalar> Constraint<T> {
    pub fn lhs(&self, point: &[T]) -> T {
        let mut s = T::zero();
        for (j, a) in &self.coeffs {
            s += T::mul_ref(a, &point[*j]);
        }
        s
    }

    pub fn is_satisfied(&self, point: &[T]) -> bool {
        self.relation.holds(&self.lhs(point), &self.rhs)
    }

    pub fn is_tight(&self, point: &[T]) -> bool {
        self.lhs(point).cmp_tol(&self.rhs).is_eq()
    }

    pub fn coeff(&self, j: usize) -> Option<&T> {
        self.coeffs.binary_search_by_key(&j, |(i, _)| *i).ok().map(|k| &self.coeffs[k].1)
    }
}

/// `min objective · x` subject to the constraints; every variable flagged
/// nonnegative carries the bound `x_j ≥ 0`, the rest are free.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T = Rational> {
    pub names: Vec<String>,
    pub objective: Vec<T>,
    pub nonnegative: Vec<bool>,
    pub constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> Default for LinearProgram<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new() -> Self {
        LinearProgram { names: Vec::new(), objective: Vec::new(), nonnegative: Vec::new(), constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>, cost: T) -> usize {
        self.names.push(name.into());
        self.objective.push(cost);
        self.nonnegative.push(true);
        self.names.len() - 1
    }

    pub fn add_free_var(&mut self, name: impl Into<String>, cost: T) -> usize {
        let j = self.add_var(name, cost);
        self.nonnegative[j] = false;
        j
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adds a row after merging repeated indices and dropping zeros. A row
    /// left with no coefficients is dropped when `0 REL rhs` holds (and kept
    /// otherwise, so infeasibility is still reported). Returns the row index
    /// when the row was kept.
    pub fn add_constraint(
        &mut self,
        coeffs: impl IntoIterator<Item = (usize, T)>,
        relation: Relation,
        rhs: T,
        tag: impl Into<String>,
    ) -> Option<usize> {
        let mut row: Vec<(usize, T)> = coeffs.into_iter().collect();
        row.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
        for (j, a) in row {
            assert!(j < self.num_vars(), "variable index {j} out of range");
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero_tol());
        if merged.is_empty() && relation.holds(&T::zero(), &rhs) {
            return None;
        }
        self.constraints.push(Constraint { coeffs: merged, relation, rhs, tag: tag.into() });
        Some(self.constraints.len() - 1)
    }

    pub fn objective_value(&self, point: &[T]) -> T {
        dot(&self.objective, point)
    }

    /// Converts every coefficient to another scalar type.
    pub fn convert<U: Scalar>(&self) -> LinearProgram<U> {
        let c = crate::scalar::convert::<T, U>;
        LinearProgram {
            names: self.names.clone(),
            objective: self.objective.iter().map(c).collect(),
            nonnegative: self.nonnegative.clone(),
            constraints: self
                .constraints
                .iter()
                .map(|r| Constraint {
                    coeffs: r.coeffs.iter().map(|(j, a)| (*j, c(a))).collect(),
                    relation: r.relation,
                    rhs: c(&r.rhs),
                    tag: r.tag.clone(),
                })
                .collect(),
        }
    }

    /// Debug dump: the objective, then one `coef*var ... REL rhs` line per row.
    pub fn dump(&self) -> String {
        let mut out = String::from("min ");
        out.push_str(&format_terms(
            self.objective.iter().enumerate().filter(|(_, c)| !c.is_zero_tol()).map(|(j, c)| (j, c)),
            &self.names,
        ));
        out.push('\n');
        for r in &self.constraints {
            let _ = writeln!(
                out,
                "{} {} {}",
                format_terms(r.coeffs.iter().map(|(j, a)| (*j, a)), &self.names),
                r.relation.symbol(),
                r.rhs.to_fraction_string()
            );
        }
        for (j, name) in self.names.iter().enumerate() {
            if !self.nonnegative[j] {
                let _ = writeln!(out, "free {name}");
            }
        }
        out
    }
}

fn format_terms<'a, T: Scalar>(terms: impl Iterator<Item = (usize, &'a T)>, names: &[String]) -> String {
    let parts: Vec<String> = terms.map(|(j, a)| format!("{}*{}", a.to_fraction_string(), names[j])).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += T::mul_ref(x, y);
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. For `Optimal`, `values` is a basic feasible solution
/// of the original system and `tight_rows`/`tight_bounds` list the rows and
/// nonnegativity bounds met with equality there.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T = Rational> {
    pub status: LpStatus,
    pub values: Vec<T>,
    /// Value of the (first) objective.
    pub objective: T,
    /// Values of every objective, for lexicographic solves.
    pub objectives: Vec<T>,
    pub tight_rows: Vec<usize>,
    pub tight_bounds: Vec<usize>,
    pub pivots: usize,
}

impl<T: Scalar> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub(crate) fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective: T::zero(),
            objectives: Vec::new(),
            tight_rows: Vec::new(),
            tight_bounds: Vec::new(),
            pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn add_constraint_merges_and_drops_vacuous_rows() {
        let mut lp = LinearProgram::<Rational>::new();
        let x = lp.add_var("x", q(1, 1));
        let y = lp.add_var("y", q(1, 1));
        let r = lp.add_constraint([(y, q(1, 1)), (x, q(1, 2)), (x, q(1, 2))], Relation::Ge, q(1, 1), "a");
        assert_eq!(r, Some(0));
        assert_eq!(lp.constraints[0].coeffs, vec![(x, q(1, 1)), (y, q(1, 1))]);
        assert_eq!(lp.add_constraint([(x, q(1, 1)), (x, q(-1, 1))], Relation::Ge, q(-2, 1), "v"), None);
        assert_eq!(lp.add_constraint(Vec::new(), Relation::Ge, q(1, 1), "bad"), Some(1));
    }

    #[test]
    fn dump_format() {
        let mut lp = LinearProgram::<Rational>::new();
        let x = lp.add_var("x(0)", q(1, 1));
        let y = lp.add_var("y(0,1)", q(0, 1));
        lp.add_constraint([(x, q(1, 3)), (y, q(-2, 1))], Relation::Le, q(7, 12), "t");
        assert_eq!(lp.dump(), "min 1*x(0)\n1/3*x(0) -2*y(0,1) <= 7/12\n");
    }
}
