//! Plain-text graph format.
//!
//! ```text
//! # butterfly
//! 5 6
//! 1
//! 1
//! 1
//! inf
//! 3/2
//! 0 1
//! ...
//! ```
//! Line one is `n m`, then one cost per vertex (`p/q`, integer or `inf`),
//! then `m` lines `u v` with 0-based endpoints. `#` starts a comment.

use super::{Cost, Graph};
use crate::error::GraphError;
use crate::scalar::Scalar;

pub fn parse_graph<T: Scalar>(text: &str) -> Result<Graph<T>, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };

    let (line, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(line, "expected `n m`")))
        .collect::<Result<_, _>>()?;
    let [n, m] = nums[..] else {
        return Err(err(line, "expected `n m`"));
    };

    let mut costs = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, tok) = lines.next().ok_or_else(|| err(0, "missing cost lines"))?;
        let cost = if tok.eq_ignore_ascii_case("inf") {
            Cost::Infinite
        } else {
            Cost::Finite(T::parse_scalar(tok).ok_or_else(|| err(line, "bad cost"))?)
        };
        costs.push(cost);
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tok) = lines.next().ok_or_else(|| err(0, "missing edge lines"))?;
        let ends: Vec<usize> = tok
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(line, "expected `u v`")))
            .collect::<Result<_, _>>()?;
        let [u, v] = ends[..] else {
            return Err(err(line, "expected `u v`"));
        };
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "trailing content"));
    }
    Graph::new(n, edges, costs)
}

pub fn format_graph<T: Scalar>(g: &Graph<T>) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for c in g.costs() {
        out.push_str(&format!("{c}\n"));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::figure1;
    use crate::scalar::{q, Rational};

    #[test]
    fn round_trip() {
        let g: Graph<Rational> = figure1(4);
        assert_eq!(parse_graph::<Rational>(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn parses_comments_and_fractions() {
        let g: Graph<Rational> = parse_graph("# tri\n3 3\n1/2\ninf # big\n2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.cost(0), &Cost::Finite(q(1, 2)));
        assert_eq!(g.cost(1), &Cost::Infinite);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph::<Rational>("").is_err());
        assert!(parse_graph::<Rational>("2 1\n1\n1\n0 0\n").is_err());
        assert!(parse_graph::<Rational>("2 1\n1\nx\n0 1\n").is_err());
        assert!(parse_graph::<Rational>("2 1\n1\n1\n0 1\n0 1\n").is_err());
        assert!(parse_graph::<Rational>("2 2\n1\n1\n0 1\n1 0\n").is_err());
    }
}
