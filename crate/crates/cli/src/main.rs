mod commands;
mod figures;

use std::path::PathBuf;
use std::process::ExitCode;

use caradepth::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact depth measures, transversal partitions and Helly/Kirchberger witnesses.
///
/// Every command prints a JSON report on stdout. Exit codes: 0 success,
/// 1 i/o, 2 parse, 3 precondition or degenerate input, 4 budget exceeded,
/// 5 internal consistency failure.
#[derive(Parser, Debug)]
#[command(name = "caradepth", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Leave timings out of the report, making it byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Also write an SVG figure of the result.
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Point file (CSV, or JSON by extension).
    #[arg(long, value_name = "PATH")]
    pub points: PathBuf,
    /// Query point as "x,y"; defaults to a `# query` line or "query" field in the file.
    #[arg(long, allow_hyphen_values = true)]
    pub query: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartitionMethod {
    /// Triangle-count construction with the logarithmic product bound.
    Planar,
    /// Projection and same-type refinement.
    Samestype,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tukey (halfspace) depth of the query.
    Tukey(Input),
    /// Simplicial depth of the query.
    Simplicial(Input),
    /// A point of maximal Tukey depth (planar) or large depth.
    Centerpoint {
        #[arg(long, value_name = "PATH")]
        points: PathBuf,
    },
    /// Projection depth of the query (planar).
    Projdepth {
        #[command(flatten)]
        input: Input,
        /// Normal of a fixed line through the query, as "a,b"; omit for the minimum over all lines.
        #[arg(long, allow_hyphen_values = true)]
        pi: Option<String>,
    },
    /// Three parts whose every transversal triangle contains the query.
    Partition {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "planar")]
        method: PartitionMethod,
    },
    /// Re-verify a partition report from its own contents.
    Certify {
        #[arg(long, value_name = "PATH")]
        report: PathBuf,
    },
    /// Depth-Helly witness for a family of convex polygons.
    Helly {
        /// Directory of CSV vertex files, one body per file.
        #[arg(long, value_name = "DIR")]
        family: PathBuf,
        #[arg(long)]
        beta: String,
    },
    /// Large strictly separable red/blue subsets.
    Kirchberger {
        #[arg(long, value_name = "PATH")]
        red: PathBuf,
        #[arg(long, value_name = "PATH")]
        blue: PathBuf,
        #[arg(long)]
        beta: String,
    },
    /// Seeded random instance in general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// uniform-square, gaussian-rounded, clustered(k) or convex-position.
        #[arg(long, default_value = "uniform-square")]
        dist: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance here (CSV, or JSON by extension).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Draw the figure stored in a report.
    Plot {
        #[arg(long, value_name = "PATH")]
        report: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            use std::io::Write;
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
