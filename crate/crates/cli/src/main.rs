//! `twocut`: generate graphs, compute minimum cuts, check them against exact
//! oracles and report scaling.

mod bench;
mod error;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twocut::graph::parse_tree_edges;
use twocut::{
    exhaustive_min_cut, generate, min_2respect, parse_graph, run_pipeline, stoer_wagner, CutResult, GenSpec, Model,
    PipelineConfig, WeightedGraph,
};

use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "twocut", version, about = "Exact minimum cuts of weighted undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random connected graph.
    Gen(GenArgs),
    /// Minimum cut of a graph file.
    Mincut(MincutArgs),
    /// Minimum cut crossing at most two edges of a given spanning tree.
    Respect2(Respect2Args),
    /// Compare the solver against an exact oracle on random graphs.
    Verify(VerifyArgs),
    /// Time the solvers on doubling edge counts.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    model: ModelArgs,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Smallest edge weight.
    #[arg(long, global = true, default_value_t = 1)]
    min_weight: u64,
    /// Largest edge weight.
    #[arg(long, global = true, default_value_t = 10)]
    max_weight: u64,
    /// Output file (default: stdout).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// For `planted`: file receiving the first block's vertex ids.
    #[arg(long, global = true)]
    sidecar: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ModelArgs {
    /// Every pair independently with probability p.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Cliques joined in a chain by light edges.
    Planted {
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        #[arg(long)]
        block_size: usize,
        #[arg(long, default_value_t = 10)]
        intra: u64,
        #[arg(long, default_value_t = 1)]
        cross: u64,
        /// Edges between consecutive blocks.
        #[arg(long, default_value_t = 1)]
        links: usize,
    },
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// A random tree plus extra random edges.
    TreePlus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        extra: usize,
    },
}

#[derive(Args)]
struct MincutArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Trees to draw from the packing (default ⌈3 log2 n⌉).
    #[arg(long)]
    trees: Option<usize>,
    /// Worker threads for the per-tree solves (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    json: bool,
    /// Check the answer against an exact oracle; exits 1 on disagreement.
    #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "auto")]
    verify: Option<OracleChoice>,
}

#[derive(Args)]
struct Respect2Args {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "auto")]
    oracle: OracleChoice,
    #[arg(long, default_value_t = 100)]
    runs: u64,
    /// Vertices per random graph.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Edge probability of the random graphs.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated target edge counts.
    #[arg(long, value_delimiter = ',', default_value = "4096,8192,16384,32768,65536,131072,262144")]
    sizes: Vec<usize>,
    /// Average degree of the generated graphs.
    #[arg(long, default_value_t = 16)]
    degree: usize,
    /// Also time the full pipeline on graphs with at most this many edges.
    #[arg(long, default_value_t = 4096)]
    pipeline_limit: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    csv: bool,
    /// Exit 1 unless ops/(m log m) varies by less than this factor.
    #[arg(long, default_value_t = 3.0)]
    max_spread: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleChoice {
    /// Exhaustive for at most 22 vertices, Stoer–Wagner above.
    Auto,
    Exhaustive,
    StoerWagner,
}

impl OracleChoice {
    fn name(self, n: usize) -> &'static str {
        match self.resolve(n) {
            OracleChoice::Exhaustive => "exhaustive",
            _ => "stoer-wagner",
        }
    }

    fn resolve(self, n: usize) -> OracleChoice {
        match self {
            OracleChoice::Auto if n <= twocut::oracle::EXHAUSTIVE_LIMIT => OracleChoice::Exhaustive,
            OracleChoice::Auto => OracleChoice::StoerWagner,
            other => other,
        }
    }

    fn min_cut(self, g: &WeightedGraph) -> twocut::Result<CutResult> {
        match self.resolve(g.n()) {
            OracleChoice::Exhaustive => exhaustive_min_cut(g),
            _ => stoer_wagner(g),
        }
    }
}

/// Seeds may be left out interactively, but not when `CI` is set.
fn seed(given: Option<u64>) -> CliResult<u64> {
    match given {
        Some(s) => Ok(s),
        None if std::env::var_os("CI").is_some() => Err(CliError::Usage("--seed is required when CI is set".into())),
        None => Ok(0),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_graph(path: &Path) -> CliResult<WeightedGraph> {
    parse_graph(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn write(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_cut(cut: &CutResult, json: bool) {
    if json {
        println!("{}", serde_json::to_string(cut).expect("cut results serialize"));
    } else {
        print!("{}", cut.to_text());
    }
}

fn cmd_gen(a: GenArgs) -> CliResult<()> {
    let model = match a.model {
        ModelArgs::Gnp { n, p } => Model::Gnp { n, p },
        ModelArgs::Planted { blocks, block_size, intra, cross, links } => {
            Model::Planted { blocks, block_size, intra, cross, links }
        }
        ModelArgs::Grid { rows, cols } => Model::Grid { rows, cols },
        ModelArgs::TreePlus { n, extra } => Model::TreePlus { n, extra },
    };
    let spec = GenSpec { model, weights: (a.min_weight, a.max_weight), seed: seed(a.seed)? };
    let out = generate(&spec)?;
    write(a.output.as_deref(), &out.graph.to_text())?;
    match (a.sidecar, out.planted) {
        (Some(path), Some(side)) => {
            let ids: Vec<String> = side.iter().map(|v| (v + 1).to_string()).collect();
            write(Some(&path), &format!("{}\n", ids.join(" ")))
        }
        (Some(_), None) => Err(CliError::Usage("--sidecar only applies to the planted model".into())),
        _ => Ok(()),
    }
}

fn cmd_mincut(a: MincutArgs) -> CliResult<()> {
    let g = read_graph(&a.input)?;
    let cfg = PipelineConfig { trees: a.trees, parallelism: a.threads, ..PipelineConfig::with_seed(seed(a.seed)?) };
    let cut = run_pipeline(&g, &cfg)?.cut;
    print_cut(&cut, a.json);
    if let Some(oracle) = a.verify {
        let want = oracle.min_cut(&g)?.weight;
        let name = oracle.name(g.n());
        if cut.weight != want {
            return Err(CliError::Mismatch(format!("solver found {} but {name} found {want}", cut.weight)));
        }
        eprintln!("verified against {name}: {want}");
    }
    Ok(())
}

fn cmd_respect2(a: Respect2Args) -> CliResult<()> {
    let g = read_graph(&a.graph)?;
    let tree =
        parse_tree_edges(&read(&a.tree)?).map_err(|source| CliError::Parse { path: a.tree.clone(), source })?;
    print_cut(&min_2respect(&g, &tree)?, a.json);
    Ok(())
}

#[derive(Serialize)]
struct Disagreement {
    run: u64,
    seed: u64,
    solver: u64,
    oracle: u64,
}

#[derive(Serialize)]
struct VerifyReport {
    oracle: &'static str,
    runs: u64,
    agree: u64,
    disagreements: Vec<Disagreement>,
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let base = seed(a.seed)?;
    let mut report =
        VerifyReport { oracle: a.oracle.name(a.n), runs: a.runs, agree: 0, disagreements: Vec::new() };
    for run in 0..a.runs {
        let s = base.wrapping_add(run);
        let g = generate(&GenSpec { model: Model::Gnp { n: a.n, p: a.p }, weights: (1, 20), seed: s })?.graph;
        let got = run_pipeline(&g, &PipelineConfig::with_seed(s))?.cut.weight;
        let want = a.oracle.min_cut(&g)?.weight;
        if got == want {
            report.agree += 1;
        } else {
            report.disagreements.push(Disagreement { run, seed: s, solver: got, oracle: want });
        }
    }
    if a.json {
        println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    } else {
        println!("{}/{} agree", report.agree, report.runs);
        for d in &report.disagreements {
            println!("run {} (seed {}): solver {} vs {} {}", d.run, d.seed, d.solver, report.oracle, d.oracle);
        }
    }
    match report.disagreements.len() {
        0 => Ok(()),
        k => Err(CliError::Mismatch(format!("{k} of {} runs disagree with {}", report.runs, report.oracle))),
    }
}

fn cmd_bench(a: BenchArgs) -> CliResult<()> {
    let rows = bench::run(&a.sizes, a.degree, a.pipeline_limit, seed(a.seed)?)?;
    let stdout = std::io::stdout().lock();
    if a.csv {
        bench::write_csv(&rows, stdout)?;
    } else {
        bench::write_table(&rows, stdout).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    }
    let spread = bench::spread(&rows);
    if spread >= a.max_spread {
        return Err(CliError::Mismatch(format!("ops/(m log m) varies by {spread:.2}x across sizes")));
    }
    eprintln!("ops/(m log m) spread across sizes: {spread:.2}x");
    Ok(())
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Gen(a) => cmd_gen(a),
        Command::Mincut(a) => cmd_mincut(a),
        Command::Respect2(a) => cmd_respect2(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twocut: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
