//! Fixed battery of reference examples behind `verify-paper`.
//!
//! Each check evaluates a published value literally. `Corruption::WeakDensity`
//! doubles the right-hand side of the full-vertex-set weak density row in
//! every LP the battery builds itself, as a negative control.

use anyhow::{anyhow, Result};
use fvs_lab::algorithms::{brute_force, brute_force_sfvs, iterative_rounding_pfds, Problem};
use fvs_lab::analysis::{integrality_gap, membership, scan_one, ScanInstance};
use fvs_lab::formulations::{
    build, build_cm_lp, build_orientation, build_wd_subgraphs_constraint, extract_cm_solution, reduce_fvs_to_sfvs,
    BuildOptions, CmCycleCover, Formulation, FormulationKind,
};
use fvs_lab::graph::generate::{butterfly, complete, cycle, figure1};
use fvs_lab::lp::{coordinate_range_over_optimal_face, solve};
use fvs_lab::separation::{cutting_plane_solve, separate_cycle_cover};
use fvs_lab::{q, Caps, Cost, Graph, Rational, Scalar};

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    None,
    WeakDensity,
}

struct Battery {
    report: RunReport,
    caps: Caps,
    corruption: Corruption,
}

fn show(values: &[Rational]) -> String {
    values.iter().map(Scalar::to_fraction_string).collect::<Vec<_>>().join(",")
}

impl Battery {
    fn run(&mut self, name: &str, f: impl FnOnce(&Self) -> Result<(bool, String)>) {
        let (passed, detail) = f(self).unwrap_or_else(|e| (false, format!("error: {e}")));
        self.report.check(name, passed, detail);
    }

    /// `build(g, parts)`, with the negative-control edit applied.
    fn formulation(&self, g: &Graph, parts: &[FormulationKind]) -> Result<Formulation<Rational>> {
        let mut f = build(g, parts, &BuildOptions { caps: self.caps, cm_distance: false })?;
        if self.corruption == Corruption::WeakDensity {
            let all: Vec<String> = (0..g.n()).map(|v| v.to_string()).collect();
            let tag = format!("wd[{}]", all.join(","));
            if let Some(row) = f.lp.constraints.iter_mut().find(|c| c.tag == tag) {
                row.rhs = row.rhs.clone() * q(2, 1);
            }
        }
        Ok(f)
    }

    /// Optimal value and x of the stacked LP, after cutting planes, plus
    /// whether every coordinate is fixed on the optimal face (only probed
    /// when `probe` is set).
    fn optimum(&self, g: &Graph, parts: &[FormulationKind], probe: bool) -> Result<(Rational, Vec<Rational>, bool)> {
        let res = cutting_plane_solve(g, self.formulation(g, parts)?, &self.caps)?;
        if !res.solution.is_optimal() {
            return Err(anyhow!("LP is {:?}", res.solution.status));
        }
        let value = res.solution.objectives.last().cloned().unwrap_or_default();
        let cols: Vec<usize> = if probe { (0..res.formulation.lp.num_vars()).collect() } else { Vec::new() };
        let unique = probe
            && coordinate_range_over_optimal_face(&res.formulation.lp, &cols)?.iter().all(|r| r.is_degenerate());
        Ok((value, res.solution.values[..g.n()].to_vec(), unique))
    }
}

fn orientation_point() -> Vec<Rational> {
    let mut p = vec![q(1, 3), q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
    for (a, b) in [(0, 2), (1, 2), (1, 1), (0, 2), (1, 2), (1, 1)] {
        p.extend([q(a, 3), q(b, 3)]);
    }
    p
}

pub fn run_battery(corruption: Corruption, caps: &Caps) -> RunReport {
    let mut r = RunReport::new("verify-paper");
    r.param("corruption", format!("{corruption:?}").to_lowercase());
    let mut b = Battery { report: r, caps: *caps, corruption };
    let bf: Graph = butterfly();
    let k4: Graph = complete(4);
    let k5: Graph = complete(5);
    let center = vec![q(1, 3), q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
    let ones = vec![q(1, 1); 5];

    b.run("graph/butterfly", |_| {
        let ok = (bf.n(), bf.m(), bf.degree(0)) == (5, 6, 4);
        Ok((ok, format!("n={} m={} deg(center)={}", bf.n(), bf.m(), bf.degree(0))))
    });
    b.run("graph/figure1-4", |_| {
        let f: Graph = figure1(4);
        let inf = f.costs().iter().filter(|c| !c.is_finite()).count();
        let unit = f.costs().iter().filter(|c| **c == Cost::Finite(q(1, 1))).count();
        Ok(((f.n(), f.m(), unit, inf) == (7, 13, 4, 3), format!("n={} m={} unit={unit} infinite={inf}", f.n(), f.m())))
    });

    b.run("fig2a/wd-optimum", |s| {
        let (value, x, unique) = s.optimum(&bf, &[FormulationKind::WeakDensity], true)?;
        Ok((value == q(1, 3) && x == center && unique, format!("value {value}, x = {}, unique {unique}", show(&x))))
    });
    b.run("fig2a/membership", |s| {
        let m = membership(&bf, FormulationKind::WeakDensity, &center, &s.caps)?;
        Ok((m.member, format!("member {}", m.member)))
    });
    b.run("fig2a/integrality-gap", |s| {
        let g = integrality_gap(&bf, Problem::Pfds, &[FormulationKind::WeakDensity], &s.caps)?;
        let ok = g.ip_value == q(1, 1) && g.lp_value == q(1, 3) && g.ratio == Some(q(3, 1));
        Ok((ok, format!("ip {} lp {}", g.ip_value, g.lp_value)))
    });

    b.run("fig2b/orient-optimum", |_| {
        let v = solve(&build_orientation(&bf))?.objective;
        Ok((v == q(1, 3), format!("value {v}")))
    });
    b.run("fig2b/point-membership", |s| {
        let m = membership(&bf, FormulationKind::Orientation, &orientation_point(), &s.caps)?;
        Ok((m.member, format!("member {}", m.member)))
    });
    b.run("fig2b/minimal-vertex", |s| {
        let inst = ScanInstance { id: "butterfly".into(), graph: bf.clone() };
        let rep = scan_one(&inst, FormulationKind::Orientation, &ones, &s.caps)?;
        let ok = rep.max_x == q(1, 3) && rep.is_vertex && rep.is_minimal;
        Ok((ok, format!("max x {}, vertex {}, minimal {}", rep.max_x, rep.is_vertex, rep.is_minimal)))
    });
    b.run("fig2b/iterative-rounding", |s| {
        let it = iterative_rounding_pfds(&bf)?;
        let opt = brute_force(&bf, Problem::Pfds, &s.caps)?.value;
        let first = it.steps.first().map(|st| (st.picked, st.x_value.clone()));
        let ok = first == Some((0, q(1, 3))) && it.cost == q(1, 1) && opt == q(1, 1);
        let pick = first.map_or("none".to_string(), |(v, x)| format!("vertex {v} at {x}"));
        Ok((ok, format!("first pick {pick}, cost {}, OPT {opt}", it.cost)))
    });

    b.run("fig4/wd-cc-optimum", |s| {
        let (value, x, unique) = s.optimum(&k4, &[FormulationKind::WeakDensity, FormulationKind::CycleCover], true)?;
        let ok = value == q(4, 3) && x == vec![q(1, 3); 4] && unique;
        Ok((ok, format!("value {value}, x = {}, unique {unique}", show(&x))))
    });
    b.run("fig4/point-feasible", |s| {
        let x = vec![q(1, 3); 4];
        let wd = membership(&k4, FormulationKind::WeakDensity, &x, &s.caps)?.member;
        let cc = separate_cycle_cover(&k4, &x)?.is_none();
        Ok((wd && cc, format!("in P_WD {wd}, every cycle covered {cc}")))
    });
    b.run("fig4/brute-force", |s| {
        let v = brute_force(&k4, Problem::Fvs, &s.caps)?.value;
        Ok((v == q(2, 1), format!("FVS {v}")))
    });

    // The K5 example, read literally.
    let k5_point = [q(7, 12), q(7, 12), q(1, 12), q(0, 1), q(0, 1)];
    let all5: Vec<usize> = (0..5).collect();
    let minus_first: Vec<usize> = (1..10).collect();
    b.run("k5/subgraph-row", |_| {
        let (row, rhs) = build_wd_subgraphs_constraint(&k5, &all5, &minus_first)?;
        let coeffs: Vec<Rational> = row.iter().map(|(_, a)| a.clone()).collect();
        let ok = coeffs == [3, 3, 4, 4, 4].map(|a| q(a, 1)) && rhs == q(4, 1);
        Ok((ok, format!("row ({}) ≥ {rhs}; expected (3,3,4,4,4) ≥ 4", show(&coeffs))))
    });
    b.run("k5/point-in-wd", |s| {
        let m = membership(&k5, FormulationKind::WeakDensity, &k5_point, &s.caps)?;
        Ok((m.member, format!("member {}", m.member)))
    });
    b.run("k5/point-not-in-wd-subgraphs", |s| {
        let m = membership(&k5, FormulationKind::WdSubgraphs, &k5_point, &s.caps)?;
        Ok((!m.member, format!("member {}", m.member)))
    });
    b.run("k5/subgraph-lhs", |_| {
        let (row, _) = build_wd_subgraphs_constraint(&k5, &all5, &minus_first)?;
        let lhs = row.iter().fold(q(0, 1), |acc, (v, a)| acc + a * &k5_point[*v]);
        Ok((lhs == q(46, 12), format!("lhs {lhs}; expected 46/12")))
    });

    b.run("k5/separating-point", |s| {
        // derived replacement: in P_WD, cut off by the K5 − v1v2 row
        let y = [q(2, 3), q(2, 3), q(1, 3), q(0, 1), q(0, 1)];
        let wd = membership(&k5, FormulationKind::WeakDensity, &y, &s.caps)?.member;
        let sub = membership(&k5, FormulationKind::WdSubgraphs, &y, &s.caps)?.member;
        let (row, rhs) = build_wd_subgraphs_constraint(&k5, &all5, &minus_first)?;
        let lhs = row.iter().fold(q(0, 1), |acc, (v, a)| acc + a * &y[*v]);
        let ok = wd && !sub && lhs == q(11, 3) && rhs == q(4, 1);
        Ok((ok, format!("in P_WD {wd}, in P_WD-Subgraphs {sub}, lhs {lhs} vs {rhs}")))
    });

    for n in [6usize, 8, 10] {
        b.run(&format!("fig1/n={n}"), |s| {
            let g: Graph = figure1(n);
            let opt = brute_force(&g, Problem::Pfds, &s.caps)?.value;
            let (lp, _, _) = s.optimum(&g, &[FormulationKind::Orientation, FormulationKind::TwoPtCover], false)?;
            let n_q = Rational::of_usize(n);
            let ok = opt == n_q.clone() - q(1, 1) && lp <= n_q.clone() / q(2, 1) && opt.clone() / &lp >= q(2, 1) * (n_q.clone() - q(1, 1)) / n_q;
            Ok((ok, format!("OPT {opt}, LP {lp}")))
        });
    }

    for (name, g) in [("c3", cycle::<Rational>(3)), ("butterfly", bf.clone()), ("k4", k4.clone())] {
        b.run(&format!("cm/fvs-equals-sfvs/{name}"), |s| {
            let inst = reduce_fvs_to_sfvs(&g)?;
            let fvs = brute_force(&g, Problem::Fvs, &s.caps)?.value;
            let sfvs = brute_force_sfvs(&inst, &s.caps)?.value;
            Ok((fvs == sfvs, format!("FVS {fvs}, SFVS {sfvs}")))
        });
    }
    b.run("cm/lp-implies-orientation", |s| {
        let g: Graph = cycle(3);
        let inst = reduce_fvs_to_sfvs(&g)?;
        let cm = build_cm_lp(&inst, CmCycleCover::Distance);
        let sol = solve(&cm.lp)?;
        let ext = extract_cm_solution(&inst, &cm.layout, &sol.values)?;
        let (orient_cc, _, _) = s.optimum(&g, &[FormulationKind::Orientation, FormulationKind::CycleCover], false)?;
        let in_orient = membership(&g, FormulationKind::Orientation, &ext.orientation_point(), &s.caps)?.member;
        let covered = separate_cycle_cover(&g, &ext.x)?.is_none();
        let ok = sol.objective >= orient_cc && in_orient && covered;
        Ok((ok, format!("CM {} vs orient+CC {orient_cc}; extracted point in P_orient {in_orient}", sol.objective)))
    });
    b.report.finish()
}
