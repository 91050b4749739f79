use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use obsmod::fattening::{greedy_bipartition, lambda_exact, WeightVector};
use obsmod::harness::{
    emit_csv, emit_svg_scatter, fig1_summary, fig1_sweep, qbar_monotonicity, theorem1_check,
    theorem2_check, undersampling_check, ExperimentRecord, Reference, ScatterAxes, SweepConfig,
    Verdict,
};
use obsmod::io::{read_graph_file, read_partition_file, write_edge_list, write_partition};
use obsmod::optimize::{best_of, brute_force_q_at_most_k, brute_force_qstar, HeuristicConfig};
use obsmod::sampling::{
    gen_clique_plus_matching, gen_star_plus_matching, gen_triangles, gen_two_cliques, observe,
    RandomSource, SampleSpec,
};
use obsmod::scalar::{parse_weight, ArithmeticMode, Exact, Scalar};
use obsmod::{fattening, modularity, Error, Graph};

/// Modularity of partially observed graphs.
#[derive(Parser, Debug)]
#[command(name = "obsmod", version, about)]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Arithmetic for scoring and fattening.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for experiment records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

impl From<Mode> for ArithmeticMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ArithmeticMode::Exact,
            Mode::Float => ArithmeticMode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Brute,
    Heuristic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coverage, degree tax and modularity of a partition.
    Score {
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Maximize modularity; the best partition goes to the output.
    Optimize {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Heuristic)]
        method: Method,
        #[arg(long, default_value_t = 200)]
        runs: usize,
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        refine: OnOff,
    },
    /// Amalgamate parts of a partition into an eta-fat partition.
    Fatten {
        graph: PathBuf,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Draw an observed graph; the edge list goes to the output.
    Sample {
        graph: PathBuf,
        #[command(flatten)]
        spec: SampleArgs,
    },
    /// Monte-Carlo experiments.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Example graphs as edge lists.
    #[command(subcommand)]
    Gen(Gen),
    /// Exhaustive reference values.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SampleArgs {
    /// Keep each edge with this probability.
    #[arg(long)]
    p: Option<f64>,
    /// Edge-limited search with this budget.
    #[arg(long)]
    budget: Option<f64>,
    /// Edge-limited search with budget c times the vertex count.
    #[arg(long)]
    budget_per_vertex: Option<f64>,
    /// Induced subgraph on this many random vertices.
    #[arg(long)]
    vertices: Option<usize>,
}

impl SampleArgs {
    fn spec(&self) -> SampleSpec {
        match (self.p, self.budget, self.budget_per_vertex, self.vertices) {
            (Some(p), ..) => SampleSpec::EdgeProbability(p),
            (_, Some(c), ..) => SampleSpec::Budget(c),
            (_, _, Some(c), _) => SampleSpec::BudgetPerVertex(c),
            (.., Some(k)) => SampleSpec::Vertices(k),
            _ => unreachable!("clap requires one sampling mode"),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Effort {
    /// Replicates per parameter value.
    #[arg(long, default_value_t = 50)]
    reps: usize,
    /// Heuristic runs per replicate.
    #[arg(long, default_value_t = 200)]
    runs: usize,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    refine: OnOff,
}

impl Effort {
    fn heuristic(&self, seed: u64) -> HeuristicConfig {
        HeuristicConfig {
            refinement: matches!(self.refine, OnOff::On),
            seed,
            ..Default::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Modularity of G_p over a grid of p.
    Fig1 {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
        grid: Vec<f64>,
        #[command(flatten)]
        effort: Effort,
        /// Horizontal jitter in the SVG scatter.
        #[arg(long, default_value_t = 0.0)]
        jitter: f64,
        /// Reference line drawn in the SVG scatter.
        #[arg(long)]
        reference: Option<f64>,
        /// Record wall time per replicate.
        #[arg(long)]
        timing: bool,
    },
    /// Fraction of G_p with modularity at most q* - eps.
    Thm1 {
        graph: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        effort: Effort,
        /// Use this value as q* instead of exhaustive search.
        #[arg(long)]
        reference: Option<f64>,
    },
    /// Deficit of the fattened partition on the full graph.
    Thm2 {
        graph: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0.05)]
        eta: f64,
        #[arg(long, default_value_t = 0.05)]
        slack: f64,
        #[command(flatten)]
        effort: Effort,
    },
    /// Mean modularity of G(n, c/n) along increasing c.
    Qbar {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<f64>,
        #[command(flatten)]
        effort: Effort,
    },
    /// Mean modularity at p0 against the best mean over a grid.
    Undersample {
        graph: PathBuf,
        #[arg(long)]
        p0: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 0.05)]
        eps_tol: f64,
        #[command(flatten)]
        effort: Effort,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// k disjoint triangles.
    Triangles { k: usize },
    /// A star with m - k edges plus k disjoint edges.
    StarMatching { m: usize, k: usize },
    /// Two disjoint cliques on n/2 vertices each.
    TwoCliques { n: usize },
    /// K_k plus t disjoint edges.
    CliqueMatching { k: usize, t: usize },
}

#[derive(Subcommand, Debug)]
enum Oracle {
    /// Exact maximum modularity and an optimal partition.
    Qstar { graph: PathBuf },
    /// Exact maximum modularity over partitions with at most k parts.
    Qk {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Number partitioning value and the greedy bipartition of positive numbers.
    Lambda {
        #[arg(required = true, num_args = 1..)]
        values: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Experiment(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Csv(_) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(path: &Path) -> Result<Graph, Failure> {
    read_graph_file(path).map_err(|e| match e {
        Error::Io(io) => Failure::Io(format!("{}: {io}", path.display())),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })
}

fn exact_and_decimal(q: &Exact) -> String {
    format!("{q} ({:.6})", q.to_f64())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Experiment(msg)) => {
            eprintln!("experiment failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Score { graph, partition } => {
            let g = load(graph)?;
            let p = read_partition_file(partition, &g)?;
            let mut out = output(&cli.out)?;
            match ArithmeticMode::from(cli.mode) {
                ArithmeticMode::Exact => {
                    let b = modularity::modularity_exact(&g, &p)?;
                    writeln!(out, "coverage {}", exact_and_decimal(&b.coverage))?;
                    writeln!(out, "degree_tax {}", exact_and_decimal(&b.degree_tax))?;
                    writeln!(out, "score {}", exact_and_decimal(&b.score))?;
                }
                ArithmeticMode::Float => {
                    let b = modularity::modularity_f64(&g, &p)?;
                    writeln!(out, "coverage {}", b.coverage)?;
                    writeln!(out, "degree_tax {}", b.degree_tax)?;
                    writeln!(out, "score {}", b.score)?;
                }
            }
            out.flush()?;
        }
        Command::Optimize { graph, method, runs, refine } => {
            let g = load(graph)?;
            let (partition, summary) = match method {
                Method::Brute => {
                    let (q, w) = brute_force_qstar(&g)?;
                    (w, format!("q* = {} (exact)", exact_and_decimal(&q)))
                }
                Method::Heuristic => {
                    let cfg = HeuristicConfig {
                        refinement: matches!(refine, OnOff::On),
                        seed: cli.seed,
                        ..Default::default()
                    };
                    let r = best_of(&g, *runs, &cfg)?;
                    (r.best_partition, format!("best of {runs} runs: {} (heuristic)", r.best_score))
                }
            };
            eprintln!("{summary}; {} parts", partition.k());
            let mut out = output(&cli.out)?;
            write_partition(&g, &partition, &mut out)?;
            out.flush()?;
        }
        Command::Fatten { graph, eta, partition } => {
            let g = load(graph)?;
            let b = read_partition_file(partition, &g)?;
            let eta_w = parse_weight(eta)?;
            let result = match ArithmeticMode::from(cli.mode) {
                ArithmeticMode::Exact => fattening::fatten(&g, &Exact::from_weight(&eta_w), &b)?,
                ArithmeticMode::Float => fattening::fatten(&g, &f64::from_weight(&eta_w), &b)?,
            };
            let before = modularity::modularity_exact(&g, &b)?.score;
            let after = modularity::modularity_exact(&g, &result)?.score;
            eprintln!(
                "{} parts -> {} parts; score {} -> {}",
                b.k(),
                result.k(),
                exact_and_decimal(&before),
                exact_and_decimal(&after)
            );
            let mut out = output(&cli.out)?;
            write_partition(&g, &result, &mut out)?;
            out.flush()?;
        }
        Command::Sample { graph, spec } => {
            let g = load(graph)?;
            let mut rng = RandomSource::new(cli.seed);
            let h = observe(&g, spec.spec(), &mut rng)?;
            let mut out = output(&cli.out)?;
            write_edge_list(&h, &mut out)?;
            out.flush()?;
        }
        Command::Experiment(e) => run_experiment(cli, e)?,
        Command::Gen(which) => {
            let g = match *which {
                Gen::Triangles { k } => gen_triangles(k),
                Gen::StarMatching { m, k } => gen_star_plus_matching(m, k)?,
                Gen::TwoCliques { n } => gen_two_cliques(n)?,
                Gen::CliqueMatching { k, t } => gen_clique_plus_matching(k, t)?,
            };
            let mut out = output(&cli.out)?;
            write_edge_list(&g, &mut out)?;
            out.flush()?;
        }
        Command::Oracle(o) => {
            let mut out = output(&cli.out)?;
            match o {
                Oracle::Qstar { graph } => {
                    let g = load(graph)?;
                    let (q, w) = brute_force_qstar(&g)?;
                    writeln!(out, "# q* = {}", exact_and_decimal(&q))?;
                    write_partition(&g, &w, &mut out)?;
                }
                Oracle::Qk { graph, k } => {
                    let g = load(graph)?;
                    let q = brute_force_q_at_most_k(&g, *k)?;
                    writeln!(out, "q_<={k} = {}", exact_and_decimal(&q))?;
                }
                Oracle::Lambda { values } => {
                    let xs = values
                        .iter()
                        .map(|v| parse_weight(v).map(|w| Exact::from_weight(&w)))
                        .collect::<Result<Vec<_>, _>>()?;
                    let x = WeightVector::new(xs)?;
                    let lambda = lambda_exact(&x)?;
                    let greedy = greedy_bipartition(&x);
                    writeln!(out, "lambda {}", exact_and_decimal(&lambda))?;
                    writeln!(out, "gamma {}", exact_and_decimal(&greedy.gamma))?;
                    writeln!(out, "A {:?}", greedy.a)?;
                    writeln!(out, "B {:?}", greedy.b)?;
                }
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn emit_records(cli: &Cli, records: &[ExperimentRecord], axes: ScatterAxes) -> Outcome {
    let mut out = output(&cli.out)?;
    match cli.format {
        Format::Csv => emit_csv(records, &mut out)?,
        Format::Svg => emit_svg_scatter(records, &axes, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn run_experiment(cli: &Cli, e: &Experiment) -> Outcome {
    match e {
        Experiment::Fig1 { graph, grid, effort, jitter, reference, timing } => {
            let g = load(graph)?;
            let cfg = SweepConfig {
                grid: grid.clone(),
                replicates: effort.reps,
                runs: effort.runs,
                seed: cli.seed,
                jitter: *jitter,
                heuristic: effort.heuristic(cli.seed),
                timing: *timing,
            };
            let records = fig1_sweep(&g, &cfg)?;
            for s in fig1_summary(&records) {
                eprintln!(
                    "p = {:.3}: mean {:.4} (se {:.4}), min {:.4}, max {:.4}, n = {}",
                    s.param_value, s.mean, s.stderr, s.min, s.max, s.count
                );
            }
            emit_records(
                cli,
                &records,
                ScatterAxes {
                    title: "Modularity of sampled graphs".into(),
                    reference_line: *reference,
                    jitter: *jitter,
                    seed: cli.seed,
                    ..Default::default()
                },
            )?;
        }
        Experiment::Thm1 { graph, p, eps, effort, reference } => {
            let g = load(graph)?;
            let reference = match reference {
                Some(q) => Reference::Heuristic(*q),
                None => Reference::Exact(brute_force_qstar(&g)?.0),
            };
            let rep = theorem1_check(
                &g,
                *p,
                *eps,
                effort.reps,
                &reference,
                effort.runs,
                &effort.heuristic(cli.seed),
                cli.seed,
            )?;
            eprintln!(
                "reference {:.6} ({}); failures {}/{} = {:.4}, 95% CI [{:.4}, {:.4}]",
                rep.reference, rep.reference_kind, rep.failures, rep.reps, rep.fraction, rep.ci.0, rep.ci.1
            );
            emit_records(cli, &rep.records, ScatterAxes { reference_line: Some(rep.reference), ..Default::default() })?;
            if rep.ci.0 > *eps {
                return Err(Failure::Experiment(format!(
                    "failure fraction is significantly above eps = {eps}"
                )));
            }
        }
        Experiment::Thm2 { graph, p, eta, slack, effort } => {
            let g = load(graph)?;
            let rep = theorem2_check(
                &g,
                *p,
                *eta,
                effort.reps,
                effort.runs,
                &effort.heuristic(cli.seed),
                cli.seed,
                *slack,
            )?;
            let mut out = output(&cli.out)?;
            writeln!(out, "seed,observed_deficit,true_deficit,kind,satisfied")?;
            for c in &rep.cases {
                writeln!(out, "{},{},{},{},{}", c.seed, c.observed_deficit, c.true_deficit, c.kind, c.satisfied)?;
            }
            out.flush()?;
            eprintln!(
                "satisfied {}/{} = {:.4}, 95% CI [{:.4}, {:.4}]",
                rep.satisfied, rep.reps, rep.fraction, rep.ci.0, rep.ci.1
            );
            if rep.ci.1 < 0.95 {
                return Err(Failure::Experiment("fewer than 95% of cases satisfy the bound".into()));
            }
        }
        Experiment::Qbar { n, c, effort } => {
            let rep = qbar_monotonicity(*n, c, effort.reps, effort.runs, &effort.heuristic(cli.seed), cli.seed)?;
            for e in &rep.estimates {
                eprintln!("c = {}: mean {:.4} (se {:.4})", e.c, e.mean, e.stderr);
            }
            eprintln!("monotonicity: {}", rep.verdict);
            let records: Vec<ExperimentRecord> = rep.estimates.iter().flat_map(|e| e.records.clone()).collect();
            emit_records(cli, &records, ScatterAxes { x_label: "c".into(), ..Default::default() })?;
            if rep.verdict == Verdict::Fails {
                return Err(Failure::Experiment("mean modularity increases with c".into()));
            }
        }
        Experiment::Undersample { graph, p0, grid, eps_tol, effort } => {
            let g = load(graph)?;
            let rep = undersampling_check(
                &g,
                *p0,
                grid,
                effort.reps,
                effort.runs,
                &effort.heuristic(cli.seed),
                cli.seed,
                *eps_tol,
            )?;
            eprintln!("p0 = {}: mean {:.4} (se {:.4})", rep.p0, rep.p0_summary.mean, rep.p0_summary.stderr);
            for s in &rep.points {
                eprintln!("p = {}: mean {:.4} (se {:.4})", s.param_value, s.mean, s.stderr);
            }
            eprintln!("verdict: {}", rep.verdict);
            emit_records(cli, &rep.records, ScatterAxes::default())?;
            if rep.verdict == Verdict::Fails {
                return Err(Failure::Experiment("mean at p0 is significantly below the grid maximum".into()));
            }
        }
    }
    Ok(())
}
