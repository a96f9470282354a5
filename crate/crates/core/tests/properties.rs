use fvs_lab::algorithms::{brute_force, iterative_rounding_pfds, primal_dual_fvs, verify_certificate, Problem};
use fvs_lab::analysis::{f_x, membership};
use fvs_lab::formulations::{
    build, build_orientation_fvs, integral_witness_orientation_fvs, orientation_fvs_index, BuildOptions,
    FormulationKind,
};
use fvs_lab::graph::{bits_to_mask, format_graph, mask_of, parse_graph};
use fvs_lab::lp::{is_feasible, is_vertex, solve};
use fvs_lab::separation::{cutting_plane_solve, mc2pt, separate_cycle_cover};
use fvs_lab::{q, Caps, Cost, Graph, Rational, Scalar, VertexId};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec((1i64..=9, 1i64..=4), n)).prop_map(
            move |(keep, costs)| {
                let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges = all.zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e).collect();
                let costs = costs.into_iter().map(|(a, b)| Cost::Finite(q(a, b))).collect();
                Graph::new(n, edges, costs).expect("simple graph")
            },
        )
    })
}

fn indicator(n: usize, set: &[VertexId]) -> Vec<Rational> {
    mask_of(n, set).into_iter().map(|b| if b { q(1, 1) } else { q(0, 1) }).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<VertexId>> {
    (0u64..1 << n).map(move |s| (0..n).filter(|&v| s >> v & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fractions_round_trip(a in -10_000i64..10_000, b in 1i64..10_000) {
        let x = q(a, b);
        prop_assert_eq!(Rational::parse_scalar(&x.to_fraction_string()), Some(x));
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(8)) {
        let text = format_graph(&g);
        let back: Graph = parse_graph(&text).unwrap();
        prop_assert_eq!(format_graph(&back), text);
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn primal_dual_is_certified(g in graph_strategy(9)) {
        let pd = primal_dual_fvs(&g).unwrap();
        prop_assert!(g.is_fvs(&pd.fvs));
        prop_assert!(verify_certificate(&g, &pd).is_ok());
        let opt = brute_force(&g, Problem::Fvs, &Caps::default()).unwrap().value;
        prop_assert!(pd.dual_value <= opt);
        prop_assert!(pd.primal_cost <= q(2, 1) * &pd.dual_value);
    }

    /// Every FVS indicator lies in each FVS polyhedron, and every PFDS
    /// indicator in each PFDS polyhedron.
    #[test]
    fn integral_solutions_are_feasible(g in graph_strategy(6)) {
        let caps = Caps::default();
        for set in subsets(g.n()) {
            let x = indicator(g.n(), &set);
            if g.is_fvs(&set) {
                for kind in [FormulationKind::StrongDensity, FormulationKind::CycleCover] {
                    prop_assert!(membership(&g, kind, &x, &caps).unwrap().member, "{kind} at {set:?}");
                }
            }
            if g.is_pfds(&set) {
                for kind in [FormulationKind::WeakDensity, FormulationKind::TwoPtCover, FormulationKind::Orientation] {
                    prop_assert!(membership(&g, kind, &x, &caps).unwrap().member, "{kind} at {set:?}");
                }
            }
        }
    }

    /// On 0/1 points the cycle cover oracle decides FVS membership.
    #[test]
    fn cycle_cover_on_indicators(g in graph_strategy(7)) {
        for set in subsets(g.n()) {
            let cut = separate_cycle_cover(&g, &indicator(g.n(), &set)).unwrap();
            prop_assert_eq!(cut.is_none(), g.is_fvs(&set));
        }
    }

    #[test]
    fn orientation_fvs_witness_is_feasible(g in graph_strategy(6)) {
        prop_assume!(g.m() > 0);
        let fvs = brute_force(&g, Problem::Fvs, &Caps::default()).unwrap().set;
        let (lp, layout) = build_orientation_fvs(&g);
        let mut point = vec![q(0, 1); lp.num_vars()];
        point[..g.n()].clone_from_slice(&indicator(g.n(), &fvs));
        for f in 0..g.m() {
            let y = integral_witness_orientation_fvs(&g, &fvs, f).unwrap();
            for (e, pair) in y.iter().enumerate() {
                let (u, v) = g.edge(e);
                for (end, w) in [(0, u), (1, v)] {
                    if pair[end] {
                        point[orientation_fvs_index(&g, layout, f, e, w)] = q(1, 1);
                    }
                }
            }
        }
        prop_assert!(is_feasible(&lp, &point));
    }

    /// The LP optimum never exceeds the integral optimum and the solver
    /// returns a vertex.
    #[test]
    fn relaxations_bound_the_optimum(g in graph_strategy(6)) {
        let caps = Caps::default();
        let opt = brute_force(&g, Problem::Pfds, &caps).unwrap().value;
        for kind in [FormulationKind::WeakDensity, FormulationKind::Orientation] {
            let f = build(&g, &[kind], &BuildOptions { caps, cm_distance: false }).unwrap();
            let lp = f.lp.clone();
            let sol = cutting_plane_solve(&g, f, &caps).unwrap().solution;
            prop_assert!(sol.objective <= opt);
            prop_assert!(is_vertex(&lp, &sol.values).unwrap());
        }
        let sol = solve(&build(&g, &[FormulationKind::StrongDensity], &BuildOptions { caps, cm_distance: false }).unwrap().lp).unwrap();
        prop_assert!(sol.objective <= brute_force(&g, Problem::Fvs, &caps).unwrap().value);
    }

    #[test]
    fn iterative_rounding_within_three(g in graph_strategy(7)) {
        let r = iterative_rounding_pfds(&g).unwrap();
        prop_assert!(g.is_pfds(&r.set));
        prop_assert!(r.within_factor_three);
        prop_assert!(r.cost <= q(3, 1) * brute_force(&g, Problem::Pfds, &Caps::default()).unwrap().value);
    }

    #[test]
    fn mc2pt_matches_brute_force(g in graph_strategy(8)) {
        let w: Vec<Rational> = g.costs().iter().map(Cost::finite_or_zero).collect();
        let dp = mc2pt(&g, &w).map(|(_, v)| v);
        let brute = brute_force(&g, Problem::Mc2pt, &Caps::default()).ok().map(|r| r.value);
        prop_assert_eq!(dp, brute);
    }

    /// `f_x(S)` equals `b(S)` minus the x-weighted degree excess.
    #[test]
    fn f_x_matches_definition(g in graph_strategy(7), bits in 1u64..128, xs in proptest::collection::vec(0i64..6, 7)) {
        let n = g.n();
        let inside = bits_to_mask(n, bits & ((1 << n) - 1));
        prop_assume!(inside.iter().any(|&b| b));
        let x: Vec<Rational> = xs[..n].iter().map(|&a| q(a, 6)).collect();
        let edges = g.edges().iter().filter(|&&(u, v)| inside[u] && inside[v]).count() as i64;
        let size = inside.iter().filter(|&&b| b).count() as i64;
        let mut expected = q(edges - size, 1);
        for u in (0..n).filter(|&u| inside[u]) {
            let d = g.adj(u).iter().filter(|(w, _)| inside[*w]).count() as i64;
            expected -= q(d - 1, 1) * &x[u];
        }
        prop_assert_eq!(f_x(&g, &x, &inside), expected);
    }
}
