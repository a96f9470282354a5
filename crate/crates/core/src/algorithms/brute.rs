use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::formulations::SfvsInstance;
use crate::graph::{Graph, UnionFind, VertexId};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Fvs,
    Pfds,
    /// Minimum cost 2-pseudotree, with the vertex costs as weights.
    Mc2pt,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Fvs => "fvs",
            Problem::Pfds => "pfds",
            Problem::Mc2pt => "mc2pt",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fvs" => Ok(Problem::Fvs),
            "pfds" => Ok(Problem::Pfds),
            "mc2pt" => Ok(Problem::Mc2pt),
            _ => Err(format!("unknown problem {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BruteForceResult<T: Scalar> {
    pub set: Vec<VertexId>,
    #[serde(with = "crate::scalar::serde_fraction")]
    pub value: T,
}

/// Whether `G − removed` is acyclic (`pseudo == false`) or a pseudoforest.
fn survives(edges: &[(usize, usize)], n: usize, removed: u64, pseudo: bool) -> bool {
    let mut uf = UnionFind::new(n);
    let mut extra = vec![0u32; n];
    for &(u, v) in edges {
        if removed >> u & 1 == 1 || removed >> v & 1 == 1 {
            continue;
        }
        let (ru, rv) = (uf.find(u), uf.find(v));
        if ru == rv {
            if !pseudo {
                return false;
            }
            extra[ru] += 1;
            if extra[ru] > 1 {
                return false;
            }
        } else {
            let carried = extra[ru] + extra[rv];
            if carried > 1 {
                return false;
            }
            uf.union(ru, rv);
            let r = uf.find(ru);
            extra[r] = carried;
        }
    }
    true
}

/// Exact optimum by subset enumeration. Among optimal sets the
/// lexicographically smallest is returned. Infinite-cost vertices are never
/// chosen for FVS/PFDS and never allowed in a 2-pseudotree.
pub fn brute_force<T: Scalar>(g: &Graph<T>, problem: Problem, caps: &Caps) -> Result<BruteForceResult<T>> {
    let n = g.n();
    let limit = if problem == Problem::Mc2pt { caps.mc2pt } else { caps.brute };
    cap("brute force", limit.min(30), n)?;
    let infinite: u64 = (0..n).filter(|&v| !g.cost(v).is_finite()).fold(0, |m, v| m | 1 << v);
    let cost = |bits: u64| -> T {
        (0..n).filter(|v| bits >> v & 1 == 1).fold(T::zero(), |acc, v| acc + g.cost(v).finite_or_zero())
    };
    let mut best: Option<(T, Vec<VertexId>)> = None;
    let mut consider = |bits: u64| {
        let c = cost(bits);
        let set: Vec<VertexId> = crate::graph::bits_to_set(bits);
        let better = match &best {
            None => true,
            Some((b, s)) => match c.cmp_tol(b) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => set < *s,
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            best = Some((c, set));
        }
    };
    match problem {
        Problem::Fvs | Problem::Pfds => {
            let pseudo = problem == Problem::Pfds;
            let full = 1u64 << n;
            let feasible: Vec<bool> = (0..full).map(|b| b & infinite == 0 && survives(g.edges(), n, b, pseudo)).collect();
            for bits in 0..full {
                // an optimum exists among minimal feasible sets (costs ≥ 0)
                if feasible[bits as usize] && (0..n).all(|v| bits >> v & 1 == 0 || !feasible[(bits & !(1 << v)) as usize]) {
                    consider(bits);
                }
            }
        }
        Problem::Mc2pt => {
            for bits in 1u64..(1u64 << n) {
                if bits & infinite != 0 {
                    continue;
                }
                let inside = crate::graph::bits_to_mask(n, bits);
                if crate::formulations::is_two_pseudotree(g, &inside) {
                    consider(bits);
                }
            }
        }
    }
    let (value, set) = best.ok_or(Error::NoFiniteSolution)?;
    Ok(BruteForceResult { set, value })
}

/// Minimum-cost subset feedback vertex set of the reduced instance, by
/// enumerating subsets of the finite-cost vertices of `H`.
pub fn brute_force_sfvs<T: Scalar>(inst: &SfvsInstance<T>, caps: &Caps) -> Result<BruteForceResult<T>> {
    let h = &inst.h;
    let finite: Vec<VertexId> = (0..h.n()).filter(|&v| h.cost(v).is_finite()).collect();
    cap("brute-force SFVS", caps.brute.min(30), finite.len())?;
    let mut best: Option<(T, Vec<VertexId>)> = None;
    for bits in 0u64..(1u64 << finite.len()) {
        let set: Vec<VertexId> = crate::graph::bits_to_set(bits).into_iter().map(|i| finite[i]).collect();
        if !inst.is_sfvs(&set) {
            continue;
        }
        let c = set.iter().fold(T::zero(), |acc, &v| acc + h.cost(v).finite_or_zero());
        let better = best.as_ref().map_or(true, |(b, s)| match c.cmp_tol(b) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => set < *s,
            std::cmp::Ordering::Greater => false,
        });
        if better {
            best = Some((c, set));
        }
    }
    let (value, set) = best.ok_or(Error::NoFiniteSolution)?;
    Ok(BruteForceResult { set, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::*;
    use crate::graph::Cost;
    use rand::SeedableRng;
    use crate::scalar::{q, Rational};

    type G = Graph<Rational>;

    #[test]
    fn examples() {
        let caps = Caps::default();
        let k4: G = complete(4);
        assert_eq!(brute_force(&k4, Problem::Fvs, &caps).unwrap(), BruteForceResult { set: vec![0, 1], value: q(2, 1) });
        let f6: G = figure1(6);
        assert_eq!(brute_force(&f6, Problem::Pfds, &caps).unwrap().value, q(5, 1));
        let b: G = butterfly();
        assert_eq!(brute_force(&b, Problem::Pfds, &caps).unwrap(), BruteForceResult { set: vec![0], value: q(1, 1) });
        assert_eq!(brute_force(&b, Problem::Mc2pt, &caps).unwrap().value, q(5, 1));
        assert!(matches!(brute_force(&path::<Rational>(3), Problem::Mc2pt, &caps), Err(Error::NoFiniteSolution)));
        assert_eq!(brute_force(&path::<Rational>(3), Problem::Fvs, &caps).unwrap().set, Vec::<usize>::new());
    }

    #[test]
    fn infinite_costs_are_never_picked() {
        let k3: G = complete(3);
        let g = k3.with_costs(vec![Cost::Infinite, Cost::Finite(q(5, 1)), Cost::Infinite]).unwrap();
        assert_eq!(brute_force(&g, Problem::Fvs, &Caps::default()).unwrap().set, vec![1]);
        let all_inf = k3.with_costs(vec![Cost::Infinite; 3]).unwrap();
        assert!(matches!(brute_force(&all_inf, Problem::Fvs, &Caps::default()), Err(Error::NoFiniteSolution)));
    }

    #[test]
    fn agrees_with_graph_predicates() {
        for seed in 0..20 {
            let g: G = erdos_renyi(7, 0.4, seed);
            for bits in 0u64..128 {
                let set = crate::graph::bits_to_set(bits);
                assert_eq!(survives(g.edges(), 7, bits, false), g.is_fvs(&set));
                assert_eq!(survives(g.edges(), 7, bits, true), g.is_pfds(&set));
            }
        }
    }

    #[test]
    fn sfvs_value_matches_fvs() {
        for seed in 0..12 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g: G = erdos_renyi(6, 0.5, seed);
            let g = g.with_costs(random_costs(6, 5, 3, &mut rng)).unwrap();
            let inst = crate::formulations::reduce_fvs_to_sfvs(&g).unwrap();
            let fvs = brute_force(&g, Problem::Fvs, &Caps::default()).unwrap();
            let sfvs = brute_force_sfvs(&inst, &Caps::default()).unwrap();
            assert_eq!(fvs, sfvs, "seed {seed}");
        }
    }
}
