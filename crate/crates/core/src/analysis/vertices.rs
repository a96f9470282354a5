//! Exhaustive vertex enumeration for tiny LPs.

use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::lp::{is_feasible, LinearProgram, Relation};
use crate::scalar::Scalar;

const MAX_BASES: usize = 2_000_000;

/// Solves the square system `a·z = b`; `None` when singular.
fn solve_square<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let k = b.len();
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero_tol())?;
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..k {
            a[c][j] /= &pivot;
        }
        b[c] /= &pivot;
        for r in 0..k {
            if r == c || a[r][c].is_zero_tol() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in c..k {
                let delta = T::mul_ref(&factor, &a[c][j]);
                a[r][j] -= delta;
            }
            let delta = T::mul_ref(&factor, &b[c]);
            b[r] -= delta;
        }
    }
    Some(b)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Every vertex of `lp`'s feasible region, by trying each choice of
/// `num_vars` tight rows and bounds. Output is sorted and deduplicated.
///
/// Limited to `caps.vertex_enum` columns and a fixed number of candidate
/// bases.
pub fn enumerate_vertices<T: Scalar + Ord>(lp: &LinearProgram<T>, caps: &Caps) -> Result<Vec<Vec<T>>> {
    let k = lp.num_vars();
    cap("vertex enumeration", caps.vertex_enum, k)?;
    // Each candidate hyperplane as a dense row and right-hand side.
    let mut forced = Vec::new();
    let mut optional = Vec::new();
    for c in &lp.constraints {
        let mut row = vec![T::zero(); k];
        for (j, a) in &c.coeffs {
            row[*j] += a;
        }
        if c.relation == Relation::Eq {
            forced.push((row, c.rhs.clone()));
        } else {
            optional.push((row, c.rhs.clone()));
        }
    }
    for j in (0..k).filter(|&j| lp.nonnegative[j]) {
        let mut row = vec![T::zero(); k];
        row[j] = T::one();
        optional.push((row, T::zero()));
    }
    if forced.len() > k {
        return Err(Error::Precondition("more equality rows than columns".into()));
    }
    let pick = k - forced.len();
    if optional.len() < pick {
        return Ok(Vec::new());
    }
    cap("vertex enumeration bases", MAX_BASES, binomial(optional.len(), pick))?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..pick).collect();
    loop {
        let (a, b): (Vec<_>, Vec<_>) = forced
            .iter()
            .cloned()
            .chain(chosen.iter().map(|&i| optional[i].clone()))
            .unzip();
        if let Some(z) = solve_square(a, b) {
            if is_feasible(lp, &z) {
                out.push(z);
            }
        }
        // Next combination in lexicographic order.
        let Some(i) = (0..pick).rev().find(|&i| chosen[i] != i + optional.len() - pick) else { break };
        chosen[i] += 1;
        for j in i + 1..pick {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
