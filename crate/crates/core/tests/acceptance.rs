//! Acceptance criteria, run at zero tolerance over exact rationals.
//!
//! Prints one line per criterion. Criteria listed in `EXPECTED_FAILURES`
//! are statements that do not hold as written; they are still evaluated
//! literally and reported as FAIL, and the run exits nonzero only when some
//! other criterion fails or an expected failure stops failing.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fvs_lab::algorithms::{
    brute_force, brute_force_sfvs, iterative_rounding_pfds, primal_dual_fvs, verify_certificate, Problem,
};
use fvs_lab::analysis::{
    check_supermodularity, check_tight_set_structure, extends, extreme_point_scan, membership, ScanInstance,
    ScanSummary, TightSetCheck,
};
use fvs_lab::formulations::{
    add_cycle_cover_distance, build, build_cm_lp, build_orientation, build_orientation_fvs,
    build_wd_subgraphs_constraint, extract_cm_solution, reduce_fvs_to_sfvs, x_lp, BuildOptions, CmCycleCover,
    CutFamily, Formulation, FormulationKind,
};
use fvs_lab::graph::generate::{
    butterfly, complete, cyclic_corpus, erdos_renyi, figure1, non_pseudoforest_corpus, random_costs,
};
use fvs_lab::graph::{bits_to_mask, mask_of};
use fvs_lab::lp::{coordinate_range_over_optimal_face, solve};
use fvs_lab::separation::{
    cutting_plane_solve, mc2pt, nwst, separate_2pt_cover, separate_cycle_cover, separate_strong_density,
    separate_weak_density, separate_wd_subgraphs, Witness,
};
use fvs_lab::{q, Caps, Cost, Graph, Rational, Result, Scalar, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

/// The stated K5 values use `d(u)` where the row has `d(u) − 1`.
const EXPECTED_FAILURES: [u32; 1] = [6];

fn caps() -> Caps {
    Caps::default()
}

fn show(values: &[Rational]) -> String {
    values.iter().map(Scalar::to_fraction_string).collect::<Vec<_>>().join(",")
}

fn with_random_costs(g: Graph, rng: &mut ChaCha8Rng) -> Graph {
    let costs = random_costs(g.n(), 9, 4, rng);
    g.with_costs(costs).expect("one cost per vertex")
}

/// Value of the last objective and the x-part after cutting planes.
fn lp_optimum(g: &Graph, parts: &[FormulationKind]) -> Result<(Rational, Vec<Rational>, Formulation<Rational>)> {
    let f = build(g, parts, &BuildOptions { caps: caps(), cm_distance: false })?;
    let res = cutting_plane_solve(g, f, &caps())?;
    assert!(res.solution.is_optimal(), "{parts:?} LP is {:?}", res.solution.status);
    let value = res.solution.objectives.last().cloned().unwrap_or_default();
    Ok((value, res.solution.values[..g.n()].to_vec(), res.formulation))
}

fn weight(x: &[Rational], set: impl IntoIterator<Item = VertexId>) -> Rational {
    set.into_iter().fold(q(0, 1), |acc, v| acc + &x[v])
}

/// Minimum `w(S)` over vertex sets whose induced subgraph is connected and
/// satisfies `keep`, by enumerating all subsets.
fn min_connected_set(g: &Graph, w: &[Rational], keep: impl Fn(&[bool]) -> bool) -> Option<Rational> {
    let n = g.n();
    (1u64..1 << n)
        .map(|s| bits_to_mask(n, s))
        .filter(|m| g.components_within(m).len() == 1 && keep(m))
        .map(|m| weight(w, (0..n).filter(|&v| m[v])))
        .min()
}

fn min_cycle_weight(g: &Graph, x: &[Rational]) -> Option<Rational> {
    g.enumerate_cycles(12).expect("small graph").iter().map(|c| weight(x, c.vertices().iter().copied())).min()
}

fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    const GRID: [(i64, i64); 7] = [(0, 1), (1, 6), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1)];
    let top = rng.gen_range(3..GRID.len());
    (0..n)
        .map(|_| {
            let (a, b) = GRID[rng.gen_range(0..=top)];
            q(a, b)
        })
        .collect()
}

fn c1_primal_dual() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut graphs, mut minimality, mut worst) = (0, 0, q(0, 1));
    for (k, p) in [0.3, 0.5, 0.7].into_iter().enumerate() {
        for i in 0..72u64 {
            let n = 4 + (i % 9) as usize;
            let g = with_random_costs(erdos_renyi(n, p, 1000 * k as u64 + i), &mut rng);
            let pd = primal_dual_fvs(&g)?;
            let cert = match verify_certificate(&g, &pd) {
                Ok(c) => c,
                Err(e) => return Ok((false, format!("graph {k}/{i}: {e}"))),
            };
            let opt = brute_force(&g, Problem::Fvs, &caps())?.value;
            let cost = g.set_cost(&pd.fvs).finite().cloned().expect("finite costs");
            let two = q(2, 1);
            if cost != pd.primal_cost || cost > two.clone() * &pd.dual_value || pd.dual_value > opt {
                return Ok((false, format!("graph {k}/{i}: cost {cost}, dual {}, OPT {opt}", pd.dual_value)));
            }
            if !opt.is_zero_tol() {
                worst = worst.max(cost / opt);
            }
            minimality += cert.minimality_checked;
            graphs += 1;
        }
    }
    Ok((true, format!("{graphs} graphs, {minimality} minimality checks, worst cost/OPT {worst}")))
}

fn c2_figure1() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [6usize, 8, 10] {
        let g: Graph = figure1(n);
        let opt = brute_force(&g, Problem::Pfds, &caps())?.value;
        let (lp, _, _) = lp_optimum(&g, &[FormulationKind::Orientation, FormulationKind::TwoPtCover])?;
        let nq = Rational::of_usize(n);
        let bound = q(2, 1) * (nq.clone() - q(1, 1)) / &nq;
        ok &= opt == nq.clone() - q(1, 1) && lp <= nq.clone() / q(2, 1) && opt.clone() / &lp >= bound;
        parts.push(format!("n={n}: OPT {opt}, LP {lp}"));
    }
    Ok((ok, parts.join("; ")))
}

fn unique_optimum(f: &Formulation<Rational>) -> Result<bool> {
    let cols: Vec<usize> = (0..f.lp.num_vars()).collect();
    Ok(coordinate_range_over_optimal_face(&f.lp, &cols)?.iter().all(|r| r.is_degenerate()))
}

fn c3_butterfly_wd() -> Result<Outcome> {
    let g: Graph = butterfly();
    let (value, x, f) = lp_optimum(&g, &[FormulationKind::WeakDensity])?;
    let unique = unique_optimum(&f)?;
    let center = [q(1, 3), q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
    Ok((value == q(1, 3) && x == center && unique, format!("value {value}, x ({}), unique {unique}", show(&x))))
}

fn c4_butterfly_orientation() -> Result<Outcome> {
    let g: Graph = butterfly();
    let inst = ScanInstance { id: "butterfly".into(), graph: g };
    let r = &extreme_point_scan(&[inst], FormulationKind::Orientation, 0, 0, &caps())?.reports[0];
    let ok = r.max_x == q(1, 3) && r.is_vertex && r.is_minimal;
    Ok((ok, format!("max x {}, vertex {}, minimal {}", r.max_x, r.is_vertex, r.is_minimal)))
}

fn c5_k4() -> Result<Outcome> {
    let g: Graph = complete(4);
    let (value, x, f) = lp_optimum(&g, &[FormulationKind::WeakDensity, FormulationKind::CycleCover])?;
    let unique = unique_optimum(&f)?;
    let fvs = brute_force(&g, Problem::Fvs, &caps())?.value;
    let ok = value == q(4, 3) && x == vec![q(1, 3); 4] && unique && fvs == q(2, 1);
    Ok((ok, format!("value {value}, x ({}), unique {unique}, FVS {fvs}", show(&x))))
}

fn c6_k5() -> Result<Outcome> {
    let g: Graph = complete(5);
    let point = [q(7, 12), q(7, 12), q(1, 12), q(0, 1), q(0, 1)];
    let in_wd = membership(&g, FormulationKind::WeakDensity, &point, &caps())?.member;
    let in_sub = membership(&g, FormulationKind::WdSubgraphs, &point, &caps())?.member;
    let cut = separate_wd_subgraphs(&g, &point, &caps())?;
    let minus_first: Vec<usize> = (1..10).collect();
    let (row, _) = build_wd_subgraphs_constraint(&g, &[0, 1, 2, 3, 4], &minus_first)?;
    let lhs = row.iter().fold(q(0, 1), |acc, (v, a)| acc + a * &point[*v]);
    let witness = cut.as_ref().map(|c| match &c.witness {
        Witness::Subgraph { vertices, edges } => vertices.len() == 5 && *edges == minus_first,
        _ => false,
    });
    let ok = in_wd && !in_sub && witness == Some(true) && lhs == q(46, 12);
    let wd_row = separate_weak_density(&g, &point, &caps())?.map(|c| format!("{} ≥ {}", c.lhs, c.rhs));
    Ok((
        ok,
        format!(
            "in P_WD {in_wd} (violated row {}), in P_WD-Subgraphs {in_sub}, first witness is K5 − v1v2 {}, K5 − v1v2 lhs {lhs} (claimed 46/12)",
            wd_row.unwrap_or_default(),
            witness.unwrap_or(false)
        ),
    ))
}

fn theorem_scan(summary: &ScanSummary<Rational>, elapsed: Duration, certified: impl Fn(&fvs_lab::analysis::ExtremePointReport<Rational>) -> bool) -> Outcome {
    let smallest = summary.reports.iter().map(|r| r.max_x.clone()).min().unwrap_or_default();
    let uncertified = summary.reports.iter().filter(|r| !certified(r)).count();
    let ok = summary.check_theorems().is_ok() && uncertified == 0 && elapsed <= Duration::from_secs(600);
    let detail = format!(
        "{} reports, {} violations, {uncertified} uncertified, smallest max x {smallest}, scan {:.1}s",
        summary.reports.len(),
        summary.theorem_violations.len(),
        elapsed.as_secs_f64()
    );
    (ok, detail)
}

fn c9_conjecture(corpus: &[ScanInstance<Rational>]) -> Result<Outcome> {
    let s = extreme_point_scan(corpus, FormulationKind::StrongDensity, 20, 9, &caps())?;
    let smallest = s.reports.iter().map(|r| r.max_x.clone()).min().unwrap_or_default();
    for &i in &s.conjecture_findings {
        let r = &s.reports[i];
        println!("    finding: {} objective ({}) max x {}", r.graph, show(&r.objective), r.max_x);
    }
    Ok((
        true,
        format!("{} SD vertex optima, {} below 1/2, smallest max x {smallest}", s.reports.len(), s.conjecture_findings.len()),
    ))
}

fn c10_containments(corpus: &[Graph]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..500u64 {
        let g = with_random_costs(erdos_renyi(4 + (i % 5) as usize, 0.5, i), &mut rng);
        let mut lp = build_orientation(&g);
        let mut c: Vec<Rational> = g.costs().iter().map(Cost::finite_or_zero).collect();
        c.resize(lp.num_vars(), q(0, 1));
        lp.objective = c;
        let sol = solve(&lp)?;
        if let Some(cut) = separate_weak_density(&g, &sol.values[..g.n()], &caps())? {
            return Ok((false, format!("orientation point {i} violates {}", cut.tag())));
        }
    }
    for i in 0..200u64 {
        let g = with_random_costs(erdos_renyi(4 + (i % 3) as usize, 0.4, 5000 + i), &mut rng);
        let (lp, _) = build_orientation_fvs(&g);
        let sol = solve(&lp)?;
        if let Some(cut) = separate_strong_density(&g, &sol.values[..g.n()], &caps())? {
            return Ok((false, format!("orientation-FVS point {i} violates {}", cut.tag())));
        }
    }
    let mut sandwiches = 0;
    let mut random: Vec<Graph> = (0..8u64).map(|i| erdos_renyi(6 + (i % 3) as usize, 0.4, 9000 + i)).collect();
    random.retain(|g| !g.is_acyclic());
    for g in corpus.iter().cloned().chain(random) {
        let g = with_random_costs(g, &mut rng);
        let (sd, _, _) = lp_optimum(&g, &[FormulationKind::StrongDensity])?;
        let (ofvs, _, _) = lp_optimum(&g, &[FormulationKind::OrientationFvs])?;
        let opt = brute_force(&g, Problem::Fvs, &caps())?.value;
        if !(sd <= ofvs && ofvs <= opt && opt <= q(2, 1) * &sd) {
            return Ok((false, format!("sandwich fails on {:?}: SD {sd}, orient-FVS {ofvs}, OPT {opt}", g.edges())));
        }
        sandwiches += 1;
    }
    Ok((true, format!("500 orientation points in P_WD, 200 orientation-FVS points in P_SD, {sandwiches} gap sandwiches")))
}

fn c11_oracles() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut trees, mut pts, mut points) = (0, 0, 0);
    for i in 0..24u64 {
        let n = 5 + (i % 6) as usize;
        let g: Graph = erdos_renyi(n, 0.45, 11_000 + i);
        let w: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(0..=6), rng.gen_range(1..=3))).collect();
        for _ in 0..4 {
            let k = rng.gen_range(2..=4).min(n);
            let mut terms: Vec<VertexId> = (0..n).collect();
            for j in 0..k {
                let r = rng.gen_range(j..n);
                terms.swap(j, r);
            }
            terms.truncate(k);
            let expected = min_connected_set(&g, &w, |m| terms.iter().all(|&t| m[t]));
            let got = nwst(&g, &w, &terms);
            if let Some((set, value)) = &got {
                let m = mask_of(n, set);
                if weight(&w, set.iter().copied()) != *value || g.components_within(&m).len() != 1 || !terms.iter().all(|&t| m[t]) {
                    return Ok((false, format!("nwst returned a bad tree {set:?} on {:?}", g.edges())));
                }
            }
            if got.map(|(_, v)| v) != expected {
                return Ok((false, format!("nwst differs on {:?} terminals {terms:?}", g.edges())));
            }
            trees += 1;
        }
        let expected = min_connected_set(&g, &w, |m| g.excess(m) >= 1);
        if mc2pt(&g, &w).map(|(_, v)| v) != expected {
            return Ok((false, format!("mc2pt differs on {:?}", g.edges())));
        }
        pts += 1;
        if n > 9 {
            continue;
        }
        for _ in 0..100 {
            let x = random_point(n, &mut rng);
            let cycle = min_cycle_weight(&g, &x).filter(|w| *w < q(1, 1));
            if separate_cycle_cover(&g, &x)?.map(|c| c.lhs) != cycle {
                return Ok((false, format!("cycle cover oracle differs at ({}) on {:?}", show(&x), g.edges())));
            }
            let two = min_connected_set(&g, &x, |m| g.excess(m) >= 1).filter(|w| *w < q(1, 1));
            if separate_2pt_cover(&g, &x)?.map(|c| c.lhs) != two {
                return Ok((false, format!("2PT oracle differs at ({}) on {:?}", show(&x), g.edges())));
            }
            points += 1;
        }
    }
    Ok((true, format!("{trees} Steiner instances, {pts} MC2PT instances, {points} points for both cover oracles")))
}

fn c12_distance() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut feasible, mut infeasible) = (0, 0);
    for i in 0..50u64 {
        let g: Graph = erdos_renyi(3 + (i % 6) as usize, 0.5, 12_000 + i);
        let mut lp = x_lp(&g);
        add_cycle_cover_distance(&mut lp, &g, Some);
        for _ in 0..20 {
            let x = random_point(g.n(), &mut rng);
            let covered = min_cycle_weight(&g, &x).map_or(true, |w| w >= q(1, 1));
            if extends(&lp, &x)? != covered {
                return Ok((false, format!("disagreement at ({}) on {:?}", show(&x), g.edges())));
            }
            if covered {
                feasible += 1;
            } else {
                infeasible += 1;
            }
        }
    }
    Ok((feasible > 0 && infeasible > 0, format!("1000 points: {feasible} feasible, {infeasible} infeasible, all agree")))
}

fn c13_chekuri_madan() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut done = 0;
    let mut seed = 13_000;
    while done < 30 {
        seed += 1;
        let g = erdos_renyi(3 + done % 4, 0.6, seed);
        if g.is_acyclic() || g.m() > 9 {
            continue;
        }
        let g = with_random_costs(g, &mut rng);
        let inst = reduce_fvs_to_sfvs(&g)?;
        let cm = build_cm_lp(&inst, CmCycleCover::Cuts);
        let f = Formulation {
            lp: cm.lp,
            parts: vec![FormulationKind::ChekuriMadan],
            cuts: vec![CutFamily::CmInterestingCycle],
            cm: Some(inst.clone()),
            n: g.n(),
        };
        let res = cutting_plane_solve(&g, f, &caps())?;
        let value = res.solution.objective.clone();
        let (orient_cc, _, _) = lp_optimum(&g, &[FormulationKind::Orientation, FormulationKind::CycleCover])?;
        let ext = extract_cm_solution(&inst, &cm.layout, &res.solution.values)?;
        let in_orient = membership(&g, FormulationKind::Orientation, &ext.orientation_point(), &caps())?.member;
        let covered = membership(&g, FormulationKind::CycleCover, &ext.x, &caps())?.member;
        let fvs = brute_force(&g, Problem::Fvs, &caps())?.value;
        let sfvs = brute_force_sfvs(&inst, &caps())?.value;
        if value < orient_cc || !in_orient || !covered || fvs != sfvs {
            return Ok((false, format!("{:?}: CM {value}, orient+CC {orient_cc}, FVS {fvs}, SFVS {sfvs}", g.edges())));
        }
        done += 1;
    }
    Ok((true, "30 instances: CM ≥ orient+CC, extractions in P_orient and cycle-covering, FVS = SFVS".into()))
}

/// WD vertex optima on sparse random graphs with seven or eight vertices.
fn sparse_wd_points() -> Result<Vec<(Graph, Vec<Rational>)>> {
    let graphs: Vec<Graph> = (0..200u64)
        .map(|i| erdos_renyi(7 + (i % 2) as usize, 0.35, 14_000 + i))
        .filter(|g| g.is_connected() && !g.is_pseudoforest())
        .take(20)
        .collect();
    let instances: Vec<ScanInstance<Rational>> =
        graphs.iter().enumerate().map(|(i, g)| ScanInstance { id: i.to_string(), graph: g.clone() }).collect();
    let s = extreme_point_scan(&instances, FormulationKind::WeakDensity, 20, 14, &caps())?;
    Ok(s.reports.iter().map(|r| (graphs[r.graph.parse::<usize>().expect("index id")].clone(), r.point.clone())).collect())
}

/// Random points of `P_WD` with every coordinate below 1/2.
fn random_wd_points(corpus: &[Graph]) -> Result<Vec<(Graph, Vec<Rational>)>> {
    const GRID: [(i64, i64); 6] = [(0, 1), (1, 6), (1, 4), (1, 3), (5, 12), (4, 9)];
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut out = Vec::new();
    for g in corpus.iter().step_by(3) {
        for _ in 0..10 {
            let x: Vec<Rational> = (0..g.n()).map(|_| GRID[rng.gen_range(0..GRID.len())]).map(|(a, b)| q(a, b)).collect();
            if separate_weak_density(g, &x, &caps())?.is_none() {
                out.push((g.clone(), x));
            }
        }
    }
    Ok(out)
}

fn c14_tight_sets(candidates: Vec<(Graph, Vec<Rational>)>) -> Result<Outcome> {
    let mut seen = BTreeSet::new();
    let (mut pairs, mut families) = (0, 0);
    for (g, point) in candidates {
        let x = point[..g.n()].to_vec();
        if x.iter().any(|v| *v >= q(1, 2)) || !seen.insert((format!("{:?}", g.edges()), show(&x))) {
            continue;
        }
        let at = || format!("{:?} at ({})", g.edges(), show(&x));
        match check_supermodularity(&g, &x, &caps()) {
            Ok(rep) if rep.holds() => pairs += rep.pairs_checked,
            Ok(rep) => return Ok((false, format!("{}: supermodularity fails {:?}", at(), rep.failures))),
            Err(e) => return Ok((false, format!("{}: {e}", at()))),
        }
        match check_tight_set_structure(&g, &x, &caps()) {
            Ok(TightSetCheck::Checked { .. }) => families += 1,
            Ok(TightSetCheck::Skipped { reason }) => return Ok((false, format!("{}: skipped, {reason}", at()))),
            Err(e) => return Ok((false, format!("{}: {e}", at()))),
        }
    }
    Ok((families > 0, format!("{families} distinct points, {pairs} supermodular pairs")))
}

fn c15_rounding(corpus: &[Graph]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut runs = 0;
    for (i, g) in corpus.iter().enumerate() {
        for g in [g.clone(), with_random_costs(g.clone(), &mut rng)] {
            let it = iterative_rounding_pfds(&g)?;
            let first = solve(&build_orientation(&g))?.objective;
            let opt = brute_force(&g, Problem::Pfds, &caps())?.value;
            let cost = g.set_cost(&it.set).finite().cloned().expect("finite costs");
            let three = q(3, 1);
            if !g.is_pfds(&it.set) || cost != it.cost || first != it.lp_lower_bound || cost > three.clone() * &first || cost > three * &opt
            {
                return Ok((false, format!("graph {i}: cost {cost}, first LP {first}, OPT {opt}")));
            }
            runs += 1;
        }
    }
    Ok((true, format!("{runs} runs within 3·LP and 3·OPT")))
}

fn main() {
    let started = Instant::now();
    let corpus: Vec<Graph> = non_pseudoforest_corpus(6);
    let instances: Vec<ScanInstance<Rational>> =
        corpus.iter().enumerate().map(|(i, g)| ScanInstance { id: format!("g{i}"), graph: g.clone() }).collect();
    let mut outcomes: Vec<(u32, bool)> = Vec::new();
    let mut report = |id: u32, title: &str, run: &mut dyn FnMut() -> Result<Outcome>| {
        let t = Instant::now();
        let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag} {title}: {detail} [{:.1}s]", t.elapsed().as_secs_f64());
        outcomes.push((id, passed));
    };

    let t = Instant::now();
    let wd = extreme_point_scan(&instances, FormulationKind::WeakDensity, 20, 7, &caps());
    let wd_time = t.elapsed();
    let t = Instant::now();
    let orient = extreme_point_scan(&instances, FormulationKind::Orientation, 20, 8, &caps());
    let orient_time = t.elapsed();

    report(1, "primal-dual certificates", &mut c1_primal_dual);
    report(2, "two-level gap family", &mut c2_figure1);
    report(3, "butterfly WD optimum", &mut c3_butterfly_wd);
    report(4, "butterfly minimal orientation vertex", &mut c4_butterfly_orientation);
    report(5, "K4 WD+CC optimum", &mut c5_k4);
    report(6, "K5 separating example, stated values", &mut c6_k5);
    report(7, "WD vertices reach 1/3", &mut || {
        Ok(match &wd {
            Ok(s) => theorem_scan(s, wd_time, |r| r.is_vertex),
            Err(e) => (false, format!("error: {e}")),
        })
    });
    report(8, "minimal orientation vertices reach 1/3", &mut || {
        Ok(match &orient {
            Ok(s) => theorem_scan(s, orient_time, |r| r.is_vertex && r.is_minimal),
            Err(e) => (false, format!("error: {e}")),
        })
    });
    report(9, "SD vertices and the 1/2 bound", &mut || c9_conjecture(&cyclic_corpus::<Rational>(6).into_iter().enumerate().map(|(i, g)| ScanInstance { id: format!("c{i}"), graph: g }).collect::<Vec<_>>()));
    report(10, "containments and gap sandwich", &mut || c10_containments(&non_pseudoforest_corpus(5)));
    report(11, "separation oracles vs enumeration", &mut c11_oracles);
    report(12, "distance formulation vs cycle rows", &mut c12_distance);
    report(13, "Chekuri-Madan LP", &mut c13_chekuri_madan);
    report(14, "supermodularity and tight sets", &mut || {
        let (Ok(a), Ok(b)) = (&wd, &orient) else { return Ok((false, "scan failed".into())) };
        let mut candidates: Vec<(Graph, Vec<Rational>)> = Vec::new();
        for r in a.reports.iter().chain(&b.reports) {
            let idx: usize = r.graph.trim_start_matches('g').parse().expect("scan ids are g<index>");
            candidates.push((corpus[idx].clone(), r.point.clone()));
        }
        candidates.extend(sparse_wd_points()?);
        candidates.extend(random_wd_points(&corpus)?);
        c14_tight_sets(candidates)
    });
    report(15, "iterative rounding within 3", &mut || c15_rounding(&corpus));

    let failed: Vec<u32> = outcomes.iter().filter(|(_, p)| !p).map(|(id, _)| *id).collect();
    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| !EXPECTED_FAILURES.contains(id)).collect();
    let recovered: Vec<u32> = EXPECTED_FAILURES.iter().copied().filter(|id| !failed.contains(id)).collect();
    println!(
        "{} of {} criteria pass; failing {failed:?} (expected {EXPECTED_FAILURES:?}) [{:.1}s]",
        outcomes.len() - failed.len(),
        outcomes.len(),
        started.elapsed().as_secs_f64()
    );
    if !unexpected.is_empty() || !recovered.is_empty() {
        println!("unexpected failures {unexpected:?}, unexpected passes {recovered:?}");
        std::process::exit(1);
    }
}
