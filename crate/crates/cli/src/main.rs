use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fvs_lab::algorithms::Problem;
use fvs_lab::formulations::FormulationKind;
use fvs_lab::Caps;
use fvs_lab_cli::battery::{run_battery, Corruption};
use fvs_lab_cli::commands::{self, Algorithm, Corpus, FailOn, Family, ScanArgs};
use fvs_lab_cli::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "fvs-lab", version, about = "Exact LP experiments for feedback vertex set and pseudoforest deletion")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Enumeration caps as `key=value,...` (density, cycles, brute, mc2pt,
    /// tight, cut_rounds, vertex_enum).
    #[arg(long, env = "FVS_LAB_CAPS", global = true)]
    caps: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve FVS or PFDS on a graph file.
    Solve {
        #[arg(value_parser = parse_problem)]
        problem: Problem,
        #[arg(value_enum)]
        algorithm: Algorithm,
        graph: PathBuf,
    },
    /// Solve a stacked LP relaxation, with cutting planes where needed.
    Lp {
        /// First part (sd, wd, wd-sub, orient, cc, cc-dist, 2pt, orient-fvs, cm).
        #[arg(long, value_parser = parse_kind)]
        formulation: FormulationKind,
        /// Further parts stacked on the same x-columns.
        #[arg(long = "and", value_parser = parse_kind)]
        and: Vec<FormulationKind>,
        /// Realize the CM cycle constraint by distances instead of cuts.
        #[arg(long)]
        cm_distance: bool,
        /// Also report a certified minimal optimal vertex.
        #[arg(long)]
        minimal: bool,
        /// Write the cut log here as JSON lines.
        #[arg(long)]
        cut_log: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Scan vertex optima of a polyhedron over a corpus.
    Scan {
        #[arg(value_parser = parse_kind)]
        kind: FormulationKind,
        /// Every connected graph up to this order (at most 6).
        #[arg(long, conflicts_with_all = ["random", "graph"])]
        all_graphs_n: Option<usize>,
        /// Number of G(n, p) samples.
        #[arg(long, requires = "n", conflicts_with = "graph")]
        random: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        graph: Vec<PathBuf>,
        /// Random objectives per instance, on top of the all-ones vector.
        #[arg(long, default_value_t = 20)]
        objectives: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "theorem")]
        fail_on: FailOn,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Test a point against a polyhedron and print a violated constraint.
    Separate {
        #[arg(value_parser = parse_kind)]
        kind: FormulationKind,
        /// Comma-separated fractions: x only, or every column.
        #[arg(long)]
        point: String,
        graph: PathBuf,
    },
    /// Run the battery of reference examples.
    VerifyPaper {
        /// Negative control: corrupt one weak density row.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Print a graph in the text format.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        random_costs: bool,
    },
}

fn parse_kind(s: &str) -> Result<FormulationKind, String> {
    s.parse()
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<Option<RunReport>> {
    let caps = match &cli.caps {
        Some(spec) => Caps::default().with_overrides(spec).map_err(anyhow::Error::msg)?,
        None => Caps::default(),
    };
    let report = match cli.command {
        Command::Solve { problem, algorithm, graph } => commands::solve(problem, algorithm, &read(&graph)?, &caps)?,
        Command::Lp { formulation, and, cm_distance, minimal, cut_log, graph } => {
            let mut parts = vec![formulation];
            parts.extend(and);
            let out = commands::lp(&parts, &read(&graph)?, &caps, cm_distance, minimal)?;
            if let Some(path) = cut_log {
                std::fs::write(&path, &out.cut_log).with_context(|| format!("writing {}", path.display()))?;
            }
            out.report
        }
        Command::Scan { kind, all_graphs_n, random, n, p, graph, objectives, seed, fail_on, jobs } => {
            let corpus = if let Some(k) = all_graphs_n {
                Corpus::AllGraphs(k)
            } else if let Some(count) = random {
                Corpus::Random { count, n: n.unwrap_or(8), p }
            } else if !graph.is_empty() {
                let files = graph.iter().map(|g| Ok((g.display().to_string(), read(g)?))).collect::<Result<_>>()?;
                Corpus::Files(files)
            } else {
                anyhow::bail!("give --all-graphs-n, --random or --graph");
            };
            commands::scan(&ScanArgs { kind, corpus, objectives, seed, fail_on, jobs: jobs.max(1) }, &caps)?
        }
        Command::Separate { kind, point, graph } => {
            commands::separate(kind, &read(&graph)?, &commands::parse_point(&point)?, &caps)?
        }
        Command::VerifyPaper { corrupt } => {
            run_battery(if corrupt { Corruption::WeakDensity } else { Corruption::None }, &caps)
        }
        Command::Generate { family, n, p, seed, random_costs } => {
            print!("{}", commands::generate(family, n, p, seed, random_costs)?);
            return Ok(None);
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
