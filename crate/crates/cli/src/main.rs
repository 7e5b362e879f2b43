use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gracegraph::constructive::{
    embed_graceful_induced, euler_bipartite_closure, optimal_graceful_embedding, plant_caterpillar_graceful,
    ConstructError,
};
use gracegraph::corpus::ingest_corpus;
use gracegraph::euler::classify_epsilon;
use gracegraph::families::{make, FamilySpec};
use gracegraph::harness::{emit_report, report_json, run_suite, Suite, SuiteParams, DEFAULT_SUITE_BUDGET};
use gracegraph::search::DEFAULT_BUDGET;
use gracegraph::{enumerate_graceful, graph6, optimal_labeling, solve_graceful, EnumerationMode, Graph, SearchConfig};
use gracegraph::{SearchError, Strategy, Verdict};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Graceful labeling laboratory.
#[derive(Parser)]
#[command(name = "gracegraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Node expansions per search.
    #[arg(long, global = true, env = "GRACEGRAPH_BUDGET")]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, env = "GRACEGRAPH_WORKERS", default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for graphs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Edges,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Complement,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Edge,
    Node,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family member, e.g. `gen h_join 2 2 3`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
    },
    /// Decide gracefulness.
    Solve {
        input: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Edge)]
        strategy: StrategyArg,
        /// Search even when the Rosa–Golomb condition settles the question.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Find an optimal labeling.
    Opt {
        input: String,
        #[arg(long)]
        exhaustive: bool,
    },
    /// List every graceful labeling.
    Enumerate {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Raw)]
        mode: Mode,
    },
    /// ε-class report.
    Classify { input: String },
    /// ε-class report; exits 1 when a theorem check fails.
    Audit { input: String },
    /// Graceful host containing the input as an induced subgraph.
    Embed {
        input: String,
        #[arg(long)]
        optimal: bool,
    },
    /// Plant a caterpillar at the node labelled 0 of a graceful labeling.
    Plant {
        input: String,
        /// Leaves per spine node, comma separated; the first entry is the
        /// planting node.
        #[arg(long)]
        caterpillar: String,
    },
    /// Smallest Euler bipartite supergraph found by adding paths.
    Closure { input: String },
    /// Run a registered suite.
    Suite {
        name: String,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        residue: Option<usize>,
        /// Graph file for the `custom` suite.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match e {
            ConstructError::BudgetExceeded { .. } | ConstructError::Search(SearchError::BudgetExceeded { .. }) => {
                EXIT_BUDGET
            }
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = if matches!(e, SearchError::BudgetExceeded { .. }) { EXIT_BUDGET } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

/// A path to a graph file (graph6 or edge list, first graph used) or a
/// graph6 literal.
fn read_graph(input: &str) -> Result<Graph, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{input}: {e}")))?;
        let corpus = ingest_corpus(&text);
        if let Some(d) = corpus.diagnostics.first() {
            return Err(Failure::input(format!("{input}:{}: {}", d.line, d.message)));
        }
        return corpus
            .graphs
            .into_iter()
            .next()
            .map(|(_, g)| g)
            .ok_or_else(|| Failure::input(format!("{input}: no graph")));
    }
    graph6::decode(input).map_err(|e| Failure::input(format!("{input:?} is neither a file nor graph6: {e}")))
}

fn render_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::G6 | Format::Json => graph6::encode(g) + "\n",
        Format::Edges => g.to_edge_list(),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::input(e.to_string()))
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn search_config(common: &Common, exhaustive: bool) -> SearchConfig {
    SearchConfig {
        budget: Some(common.budget.unwrap_or(DEFAULT_BUDGET)),
        workers: common.workers.max(1),
        rosa_golomb_shortcut: !exhaustive,
        ..SearchConfig::default()
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    match cli.command {
        Command::Gen { family } => {
            let mut tokens: Vec<&str> = family.iter().flat_map(|t| t.split_whitespace()).collect();
            let seed = common.seed.map(|s| s.to_string());
            if let (Some(seed), Some(&"graphforest")) = (&seed, tokens.first()) {
                if tokens.len() < 2 {
                    return Err(Failure::input("graphforest: missing total order"));
                }
                tokens.insert(2, seed);
            }
            let spec = FamilySpec::parse(&tokens.join(" ")).map_err(Failure::input)?;
            let g = make(&spec).map_err(Failure::input)?;
            let text = match common.format {
                Format::Json => json(&serde_json::json!({
                    "family": spec.to_string(),
                    "graph6": graph6::encode(&g),
                    "p": g.p(),
                    "q": g.q(),
                })),
                f => render_graph(&g, f),
            };
            emit(common, &text)?;
            Ok(0)
        }
        Command::Solve { input, strategy, exhaustive } => {
            let g = read_graph(&input)?;
            let mut cfg = search_config(common, exhaustive);
            cfg.strategy = match strategy {
                StrategyArg::Edge => Strategy::EdgeLabel,
                StrategyArg::Node => Strategy::NodeOrder,
            };
            let out = solve_graceful(&g, &cfg)?;
            emit(common, &json(&out))?;
            Ok(if out.verdict == Verdict::BudgetExceeded { EXIT_BUDGET } else { 0 })
        }
        Command::Opt { input, exhaustive } => {
            let g = read_graph(&input)?;
            let out = optimal_labeling(&g, &search_config(common, exhaustive))?;
            emit(common, &json(&out))?;
            Ok(if out.opt.is_none() { EXIT_BUDGET } else { 0 })
        }
        Command::Enumerate { input, mode } => {
            let g = read_graph(&input)?;
            let mode = match mode {
                Mode::Raw => EnumerationMode::Raw,
                Mode::Complement => EnumerationMode::UpToComplement,
            };
            let out = enumerate_graceful(&g, mode, &search_config(common, false))?;
            emit(common, &json(&out))?;
            Ok(0)
        }
        Command::Classify { input } => {
            let g = read_graph(&input)?;
            emit(common, &json(&classify_epsilon(&g)))?;
            Ok(0)
        }
        Command::Audit { input } => {
            let g = read_graph(&input)?;
            let report = classify_epsilon(&g);
            emit(common, &json(&report))?;
            Ok(if report.audit_passed() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Embed { input, optimal } => {
            let g = read_graph(&input)?;
            let cfg = search_config(common, false);
            let text = if optimal {
                let e = optimal_graceful_embedding(&g, &cfg)?;
                match common.format {
                    Format::Json => json(&e),
                    f => render_graph(&e.record.output, f),
                }
            } else {
                let r = embed_graceful_induced(&g, &cfg)?;
                match common.format {
                    Format::Json => json(&r),
                    f => render_graph(&r.output, f),
                }
            };
            emit(common, &text)?;
            Ok(0)
        }
        Command::Plant { input, caterpillar } => {
            let g = read_graph(&input)?;
            let spine: Vec<usize> = caterpillar
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::input(format!("bad caterpillar entry {t:?}"))))
                .collect::<Result<_, _>>()?;
            let out = solve_graceful(&g, &search_config(common, false))?;
            let Some(l) = out.witness else {
                return match out.verdict {
                    Verdict::BudgetExceeded => Err(Failure { code: EXIT_BUDGET, message: "budget exhausted".into() }),
                    _ => Err(Failure::input("input graph is not graceful")),
                };
            };
            let r = plant_caterpillar_graceful(&g, &l, &spine)?;
            let text = match common.format {
                Format::Json => json(&r),
                f => render_graph(&r.output, f),
            };
            emit(common, &text)?;
            Ok(0)
        }
        Command::Closure { input } => {
            let g = read_graph(&input)?;
            let c = euler_bipartite_closure(&g)?;
            let text = match common.format {
                Format::Json => json(&serde_json::json!({
                    "input": graph6::encode(&g),
                    "output": graph6::encode(&c.graph),
                    "added_nodes": c.added_nodes,
                    "added_edges": c.added_edges,
                })),
                f => render_graph(&c.graph, f),
            };
            emit(common, &text)?;
            Ok(0)
        }
        Command::Suite { name, max, samples, residue, corpus } => {
            let suite: Suite = name.parse().map_err(Failure::input)?;
            let mut custom = Vec::new();
            if let Some(path) = &corpus {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                let c = ingest_corpus(&text);
                for d in &c.diagnostics {
                    eprintln!("{}:{}: skipped: {}", path.display(), d.line, d.message);
                }
                custom = c.graphs.into_iter().map(|(_, g)| g).collect();
            }
            let params = SuiteParams {
                max,
                samples,
                residue,
                seed: common.seed.unwrap_or(0),
                budget: common.budget.unwrap_or(DEFAULT_SUITE_BUDGET),
                workers: common.workers.max(1),
            };
            let report = run_suite(suite, &params, &custom).map_err(Failure::input)?;
            let s = &report.summary;
            if report.has_counterexamples() {
                eprintln!("COUNTEREXAMPLE: {} refutes {} graph(s) against: {}", suite, s.refuted, report.claim);
                for c in &report.counterexamples {
                    eprintln!("  {} ({}): {}", c.graph6, c.family, c.reason);
                }
            }
            eprintln!(
                "{suite}: {} supported, {} refuted, {} inconclusive, {} recorded",
                s.supported, s.refuted, s.inconclusive, s.recorded
            );
            match &common.out {
                Some(path) => emit_report(&report, path).map_err(Failure::input)?,
                None => emit(common, &(report_json(&report) + "\n"))?,
            }
            Ok(if report.has_counterexamples() { EXIT_COUNTEREXAMPLE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gracegraph: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
