mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::RunReport;

/// Check, color and generate directed hypergraphs.
///
/// Exit codes: 0 ok, 1 property or colorability negative, 2 input error,
/// 3 internal structure violation, 4 search cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "dhcolor", version)]
struct Cli {
    /// Write a JSON run report to this path (`-` for stderr).
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a structural property; prints a witness if it fails.
    Check {
        property: Property,
        /// Hypergraph file, or `-` for stdin.
        input: String,
    },
    /// Color a hypergraph and verify the result before writing it.
    Color {
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Number of colors for `poly`.
        #[arg(long)]
        c: Option<usize>,
        /// Output file for the coloring (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the decomposition report of the 2->1 algorithm to PATH
        /// (stderr if no path is given).
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        dump_structure: Option<String>,
        input: String,
    },
    /// Generate a construction or a fixed pattern.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Pattern name for `pattern`: S, F, F_alt or F0.
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search the input for a copy of a fixed pattern.
    Contains {
        #[arg(long)]
        pattern: String,
        /// Largest number of vertex injections to try.
        #[arg(long, default_value_t = dhcolor::oracle::DEFAULT_EMBEDDING_CAP)]
        cap: u128,
        input: String,
    },
    /// Exhaustive colorability search.
    Oracle {
        kind: OracleKind,
        #[arg(long)]
        c: Option<usize>,
        /// Vertex cap for `2color`/`color`, assignment cap for `poly`.
        #[arg(long)]
        cap: Option<u128>,
        input: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Property {
    PropertyS,
    PropertySRelaxed,
    Specboth,
    Linear,
    TwoOne,
    Oriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    Main,
    Linear,
    Specboth,
    Poly,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    LowerBound,
    OrientedLowerBound,
    Tightness,
    Star,
    Pattern,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleKind {
    #[value(name = "2color")]
    TwoColor,
    Color,
    Poly,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();

    let mut digest = None;
    let outcome = match cli.command {
        Command::Check { property, input } => commands::check(property, &input, &mut digest),
        Command::Color { algorithm, c, output, dump_structure, input } => {
            commands::color(algorithm, c, output.as_deref(), dump_structure.as_deref(), &input, &mut digest)
        }
        Command::Gen { kind, n, k, name, output } => commands::generate(kind, n, k, name.as_deref(), output.as_deref()),
        Command::Contains { pattern, cap, input } => commands::contains(&pattern, cap, &input, &mut digest),
        Command::Oracle { kind, c, cap, input } => commands::oracle(kind, c, cap, &input, &mut digest),
    };
    let outcome = outcome.unwrap_or_else(|failure| failure);
    if !outcome.message.is_empty() {
        if outcome.code == 0 || outcome.code == 1 {
            println!("{}", outcome.message);
        } else {
            eprintln!("error: {}", outcome.message);
        }
    }

    if let Some(target) = cli.report {
        let report = RunReport::new(args, digest, &outcome, start.elapsed());
        if let Err(e) = report.write(&target) {
            eprintln!("error: cannot write report: {e}");
        }
    }
    ExitCode::from(outcome.code)
}
