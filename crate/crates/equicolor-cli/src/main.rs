//! `equicolor`: command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (a JSON error object is
//! printed to stdout), 2 on a usage error.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "equicolor", version, about = "Equitable and dominating graph colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph file (DIMACS .col, or edge JSON for .json files).
    #[arg(long, short = 'g')]
    pub graph: PathBuf,
    /// Override the format guessed from the extension.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Args, Debug, Clone)]
pub struct DriverArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest move domain searched before restarting.
    #[arg(long, default_value_t = 6)]
    pub m_max: usize,
    /// Restarts allowed after a stall.
    #[arg(long, default_value_t = 8)]
    pub retries: usize,
    /// Apply separated batches of same-signature moves.
    #[arg(long)]
    pub batch: bool,
    /// Build the start coloring from a shuffled vertex order.
    #[arg(long)]
    pub randomize_start: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Dimacs,
    EdgeJson,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Jsonl,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// Number of proper k-colorings.
    Count,
    /// Whether an equitable proper k-coloring exists.
    Equitable,
    /// Whether an admissible move of size at most m exists for a coloring.
    Move,
    /// Whether a total list coloring dominating the seed exists.
    Dominate,
    /// Blocks by brute force.
    Blocks,
    /// Whether the graph is a Gallai tree, by brute force.
    Gallai,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Regular3,
    Regular4,
    Regular5,
    Gnp,
    Torus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equitable proper k-coloring for k ≥ Δ+1.
    ColorEquitable {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        /// Start from this coloring instead of a greedy one.
        #[arg(long)]
        start: Option<PathBuf>,
        #[command(flatten)]
        driver: DriverArgs,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Equitable Δ-coloring of a sparse graph.
    ColorDelta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Defaults to the maximum degree.
        #[arg(long)]
        delta: Option<usize>,
        /// Write the claim report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Total list coloring dominating a seed coloring.
    Dominate {
        #[command(flatten)]
        graph: GraphArgs,
        /// `{"lists": [[...], ...], "seed": [c or null, ...]}`.
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        coloring: PathBuf,
        /// Also require class sizes to differ by at most one.
        #[arg(long)]
        equitable: bool,
        /// Also require at least as many vertices per color as this coloring.
        #[arg(long)]
        dominates: Option<PathBuf>,
    },
    /// Stream the recoloring dynamics step by step.
    Trace {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        driver: DriverArgs,
        #[arg(long, value_enum, default_value = "jsonl")]
        trace_format: TraceFormat,
    },
    /// Brute-force probes on tiny graphs.
    Oracle {
        #[arg(value_enum)]
        probe: Probe,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Time the equitable driver on seeded instances.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a generated graph.
    Generate {
        #[command(subcommand)]
        spec: GenerateSpec,
        #[arg(long, value_enum, default_value = "dimacs", global = true)]
        format: FormatArg,
        #[arg(long, short = 'o', global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenerateSpec {
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Torus {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    GallaiTree {
        #[arg(long)]
        blocks: usize,
        #[arg(long, default_value_t = 4)]
        max_block: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Hub {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        target_avg: f64,
        #[arg(long, default_value_t = 1)]
        hubs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Named {
        name: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ColorEquitable { graph, k, start, driver, out } => {
            commands::color_equitable(&graph, k, start.as_deref(), &driver, out.as_deref())
        }
        Command::ColorDelta { graph, delta, report, out } => {
            commands::color_delta(&graph, delta, report.as_deref(), out.as_deref())
        }
        Command::Dominate { graph, lists, out } => commands::dominate(&graph, &lists, out.as_deref()),
        Command::Verify { graph, coloring, equitable, dominates } => {
            commands::verify(&graph, &coloring, equitable, dominates.as_deref())
        }
        Command::Trace { graph, k, driver, trace_format } => commands::trace(&graph, k, &driver, trace_format),
        Command::Oracle { probe, graph, k, coloring, lists, m } => {
            commands::oracle(probe, &graph, k, coloring.as_deref(), lists.as_deref(), m)
        }
        Command::Bench { family, n, instances, seed } => commands::bench(family, n, instances, seed),
        Command::Generate { spec, format, out } => commands::generate(spec, format, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            println!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
