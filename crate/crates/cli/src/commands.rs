//! One function per subcommand; each returns a finished [`RunReport`].

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use fvs_lab::algorithms::{brute_force, iterative_rounding_pfds, primal_dual_fvs, verify_certificate, Problem};
use fvs_lab::analysis::{extreme_point_scan, membership, ScanInstance, Violation};
use fvs_lab::formulations::{build, BuildOptions, FormulationKind};
use fvs_lab::graph::generate::{
    butterfly, complete, cycle, cyclic_corpus, erdos_renyi, figure1, non_pseudoforest_corpus, path, random_costs,
};
use fvs_lab::graph::{format_graph, parse_graph};
use fvs_lab::lp::{is_minimal_point, is_vertex, minimal_vertex};
use fvs_lab::separation::cutting_plane_solve;
use fvs_lab::{Caps, Graph, Rational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::RunReport;

fn fractions(values: &[Rational]) -> Vec<String> {
    values.iter().map(Scalar::to_fraction_string).collect()
}

pub fn load(text: &str) -> Result<Graph> {
    parse_graph(text).map_err(|e| anyhow!("graph parse error: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    PrimalDual,
    IterRound,
    Brute,
}

pub fn solve(problem: Problem, algorithm: Algorithm, text: &str, caps: &Caps) -> Result<RunReport> {
    let g = load(text)?;
    let mut r = RunReport::new("solve").input(text.as_bytes());
    r.param("problem", problem);
    r.param("algorithm", algorithm.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default());
    let feasible = |set: &[usize]| match problem {
        Problem::Fvs => g.is_fvs(set),
        Problem::Pfds => g.is_pfds(set),
        Problem::Mc2pt => true,
    };
    match (problem, algorithm) {
        (_, Algorithm::Brute) => {
            let b = brute_force(&g, problem, caps)?;
            r.result("set", &b.set);
            r.result("cost", b.value.to_fraction_string());
            if problem != Problem::Mc2pt {
                r.check("feasible", feasible(&b.set), format!("{problem} check on the returned set"));
            }
        }
        (Problem::Fvs, Algorithm::PrimalDual) => {
            let pd = primal_dual_fvs(&g)?;
            r.result("set", &pd.fvs);
            r.result("cost", pd.primal_cost.to_fraction_string());
            r.result("dual_value", pd.dual_value.to_fraction_string());
            r.result("raises", pd.raises.len());
            r.result("trace", serde_json::from_str::<serde_json::Value>(&pd.trace_json())?);
            r.check("feasible", feasible(&pd.fvs), "FVS check on the returned set");
            match verify_certificate(&g, &pd) {
                Ok(cert) => r.check(
                    "certificate",
                    true,
                    format!(
                        "{} dual rows, {} minimality checks, cost ≤ 2·dual",
                        cert.dual_rows_checked, cert.minimality_checked
                    ),
                ),
                Err(e) => r.check("certificate", false, e.to_string()),
            }
        }
        (Problem::Pfds, Algorithm::IterRound) => {
            let it = iterative_rounding_pfds(&g)?;
            r.result("set", &it.set);
            r.result("cost", it.cost.to_fraction_string());
            r.result("lp_lower_bound", it.lp_lower_bound.to_fraction_string());
            let picks: Vec<_> = it
                .steps
                .iter()
                .map(|s| serde_json::json!({ "vertex": s.picked, "x": s.x_value.to_fraction_string(), "minimal_vertex": s.used_minimal_vertex }))
                .collect();
            r.result("picks", picks);
            r.check("feasible", feasible(&it.set), "PFDS check on the returned set");
            r.check("factor_three", it.within_factor_three, "cost ≤ 3 · first LP value");
        }
        (p, a) => bail!("algorithm {a:?} does not solve {p}"),
    }
    Ok(r.finish())
}

pub struct LpRun {
    pub report: RunReport,
    /// Cut log as JSON lines.
    pub cut_log: String,
}

pub fn lp(parts: &[FormulationKind], text: &str, caps: &Caps, cm_distance: bool, minimal: bool) -> Result<LpRun> {
    if parts.is_empty() {
        bail!("at least one --formulation is required");
    }
    let g = load(text)?;
    let mut r = RunReport::new("lp").input(text.as_bytes());
    r.param("formulation", parts.iter().map(|p| p.flag()).collect::<Vec<_>>().join("+"));
    r.param("cm_distance", cm_distance);
    let formulation = build(&g, parts, &BuildOptions { caps: *caps, cm_distance })?;
    let res = cutting_plane_solve(&g, formulation, caps)?;
    let sol = &res.solution;
    r.result("status", format!("{:?}", sol.status).to_lowercase());
    r.result("rounds", res.rounds);
    r.result("cuts", res.log.len());
    if sol.is_optimal() {
        let lp = &res.formulation.lp;
        if sol.objectives.len() > 1 {
            r.result("infinite_mass", sol.objectives[0].to_fraction_string());
        }
        let value = sol.objectives.last().cloned().unwrap_or_default();
        r.result("value", value.to_fraction_string());
        r.result("x", fractions(&sol.values[..g.n()]));
        r.result("columns", lp.num_vars());
        r.result("rows", lp.constraints.len());
        r.result("is_vertex", is_vertex(lp, &sol.values)?);
        r.result("is_minimal", is_minimal_point(lp, &sol.values)?);
        if minimal {
            if g.costs().iter().any(|c| !c.is_finite()) {
                bail!("--minimal needs finite costs");
            }
            let mv = minimal_vertex(lp, &lp.objective)?;
            r.result("minimal_x", fractions(&mv.values[..g.n()]));
            r.check("minimal_vertex", is_minimal_point(lp, &mv.values)?, "certified on the final LP");
        }
    }
    Ok(LpRun { report: r.finish(), cut_log: res.log_json_lines() })
}

/// Where the scan corpus comes from.
#[derive(Clone, Debug)]
pub enum Corpus {
    AllGraphs(usize),
    Random { count: usize, n: usize, p: f64 },
    Files(Vec<(String, String)>),
}

impl Corpus {
    fn describe(&self) -> String {
        match self {
            Corpus::AllGraphs(n) => format!("all connected graphs, n ≤ {n}"),
            Corpus::Random { count, n, p } => format!("{count} samples of G({n}, {p})"),
            Corpus::Files(files) => files.iter().map(|(name, _)| name.as_str()).collect::<Vec<_>>().join(" "),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FailOn {
    Theorem,
    Conjecture,
    None,
}

pub struct ScanArgs {
    pub kind: FormulationKind,
    pub corpus: Corpus,
    pub objectives: usize,
    pub seed: u64,
    pub fail_on: FailOn,
    pub jobs: usize,
}

fn scan_corpus(kind: FormulationKind, corpus: &Corpus, seed: u64) -> Result<(Vec<ScanInstance<Rational>>, Vec<u8>)> {
    let wants_cycle = kind == FormulationKind::StrongDensity;
    let keep = |g: &Graph| if wants_cycle { !g.is_acyclic() } else { !g.is_pseudoforest() };
    let mut digest_input = Vec::new();
    let instances = match corpus {
        Corpus::AllGraphs(n) => {
            if *n > 6 {
                bail!("--all-graphs-n is limited to 6");
            }
            let graphs = if wants_cycle { cyclic_corpus(*n) } else { non_pseudoforest_corpus(*n) };
            graphs.into_iter().enumerate().map(|(i, graph)| ScanInstance { id: format!("n{}-{i}", graph.n()), graph }).collect()
        }
        Corpus::Random { count, n, p } => (0..*count as u64)
            .map(|i| (i, erdos_renyi(*n, *p, seed.wrapping_add(i))))
            .filter(|(_, g)| keep(g))
            .map(|(i, graph)| ScanInstance { id: format!("gnp-{n}-{p}-{}", seed.wrapping_add(i)), graph })
            .collect(),
        Corpus::Files(files) => {
            let mut out = Vec::new();
            for (name, text) in files {
                digest_input.extend_from_slice(text.as_bytes());
                let graph = load(text).with_context(|| name.clone())?;
                if !keep(&graph) {
                    bail!("{name} is outside the scan hypothesis");
                }
                out.push(ScanInstance { id: name.clone(), graph });
            }
            out
        }
    };
    Ok((instances, digest_input))
}

pub fn scan(args: &ScanArgs, caps: &Caps) -> Result<RunReport> {
    let (corpus, digest_input) = scan_corpus(args.kind, &args.corpus, args.seed)?;
    let mut r = RunReport::new("scan");
    if !digest_input.is_empty() {
        r = r.input(&digest_input);
    }
    r.param("kind", args.kind);
    r.param("seed", args.seed);
    r.param("objectives", args.objectives);
    r.param("corpus", args.corpus.describe());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build()?;
    let summary = pool.install(|| extreme_point_scan(&corpus, args.kind, args.objectives, args.seed, caps))?;
    r.result("instances", corpus.len());
    r.result("reports", summary.reports.len());
    let min_max = summary.reports.iter().map(|rep| &rep.max_x).min().map(Scalar::to_fraction_string);
    r.result("smallest_max_x", min_max);
    r.result("theorem_violations", &summary.theorem_violations);
    r.result("conjecture_findings", &summary.conjecture_findings);
    r.result("details", &summary.reports);
    let theorem_ok = summary.theorem_violations.is_empty();
    let conjecture_ok = summary.conjecture_findings.is_empty();
    let detail = |k: usize| format!("{k} flagged of {}", summary.reports.len());
    match args.fail_on {
        FailOn::None => {
            r.note("theorem", theorem_ok, detail(summary.theorem_violations.len()));
            r.note("conjecture", conjecture_ok, detail(summary.conjecture_findings.len()));
        }
        FailOn::Theorem => {
            r.check("theorem", theorem_ok, detail(summary.theorem_violations.len()));
            r.note("conjecture", conjecture_ok, detail(summary.conjecture_findings.len()));
        }
        FailOn::Conjecture => {
            r.check("theorem", theorem_ok, detail(summary.theorem_violations.len()));
            r.check("conjecture", conjecture_ok, detail(summary.conjecture_findings.len()));
        }
    }
    Ok(r.finish())
}

pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| Rational::parse_scalar(t).ok_or_else(|| anyhow!("bad coordinate {t:?}")))
        .collect()
}

pub fn separate(kind: FormulationKind, text: &str, point: &[Rational], caps: &Caps) -> Result<RunReport> {
    let g = load(text)?;
    let mut r = RunReport::new("separate").input(text.as_bytes());
    r.param("kind", kind);
    r.param("point", fractions(point).join(","));
    let m = membership(&g, kind, point, caps)?;
    r.result("member", m.member);
    match m.violation {
        None => r.result("violation", serde_json::Value::Null),
        Some(Violation::Negative(j)) => r.result("violation", format!("column {j} is negative")),
        Some(Violation::NoExtension) => r.result("violation", "no feasible completion of the auxiliary columns"),
        Some(Violation::Row { tag, lhs, rhs }) => r.result(
            "violation",
            serde_json::json!({ "row": tag, "lhs": lhs.to_fraction_string(), "rhs": rhs.to_fraction_string() }),
        ),
        Some(Violation::Cut(c)) => r.result(
            "violation",
            serde_json::json!({
                "family": c.family.name(),
                "witness": c.witness,
                "lhs": c.lhs.to_fraction_string(),
                "rhs": c.rhs.to_fraction_string(),
            }),
        ),
    }
    Ok(r.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Butterfly,
    Complete,
    Cycle,
    Path,
    Figure1,
    Random,
}

/// Graph text for a named family; `random_costs` draws `p/q` costs with
/// `p ≤ 10`, `q ≤ 5` from the seed.
pub fn generate(family: Family, n: usize, p: f64, seed: u64, with_random_costs: bool) -> Result<String> {
    let g: Graph = match family {
        Family::Butterfly => butterfly(),
        Family::Complete => complete(n),
        Family::Cycle if n < 3 => bail!("cycles need n ≥ 3"),
        Family::Cycle => cycle(n),
        Family::Path => path(n),
        Family::Figure1 => figure1(n),
        Family::Random => erdos_renyi(n, p, seed),
    };
    let g = if with_random_costs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        g.with_costs(random_costs(g.n(), 10, 5, &mut rng))?
    } else {
        g
    };
    Ok(format_graph(&g))
}
