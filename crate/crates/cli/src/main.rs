use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hybrid_index::corpus::Alphabet;

mod commands;

/// Exit status for a failed verification.
const EXIT_VERIFY: u8 = 1;
/// Exit status for usage and bounds errors (clap's own usage errors also use 2).
const EXIT_USAGE: u8 = 2;
/// Exit status for I/O and index-format errors.
const EXIT_IO: u8 = 3;

/// Hybrid LZ77 index for repetitive texts.
#[derive(Parser, Debug)]
#[command(name = "hybridx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an index file from a text file.
    Build {
        input: PathBuf,
        output: PathBuf,
        /// Longest supported pattern.
        #[arg(long, default_value_t = 100)]
        m: usize,
        /// Largest supported edit distance.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Raw-value period of the gap-coded lists.
        #[arg(long, default_value_t = 32)]
        g: usize,
        /// Search-sample period of the gap-coded lists.
        #[arg(long, default_value_t = 512)]
        b: usize,
        /// Separator run length (defaults to k + 1).
        #[arg(long)]
        sep_count: Option<usize>,
    },
    /// Report occurrences as TSV: pattern id, start, end, tag.
    Query {
        index: PathBuf,
        /// A single pattern.
        pattern: Option<String>,
        /// File with one pattern per line.
        #[arg(long, conflicts_with = "pattern")]
        patterns: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Compare the index against a direct scan of its source text.
    Verify {
        index: PathBuf,
        corpus: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time random non-unary queries and print CSV.
    Bench {
        index: PathBuf,
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 40, 80])]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 3000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Print the size report of an index file.
    Stats { index: PathBuf },
    /// Print the LZ77 parse of a text file.
    Parse { input: PathBuf },
    /// Write a synthetic repetitive corpus.
    Gen {
        output: PathBuf,
        /// Base length in bytes.
        #[arg(long, default_value_t = 1 << 20)]
        size: usize,
        /// Total copies, the base included.
        #[arg(long, default_value_t = 8)]
        copies: usize,
        /// Per-byte mutation probability of each later copy.
        #[arg(long, default_value_t = 0.001)]
        rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "dna")]
        alphabet: Alphabet,
    },
}

/// Errors raised by the front end itself rather than the library.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verify(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verify(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use hybrid_index::Error as E;
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
        };
    }
    match err.downcast_ref::<E>() {
        Some(
            E::QueryExceedsBounds { .. }
            | E::EmptyPattern
            | E::BadParams(_)
            | E::BadSampling { .. }
            | E::SeparatorCollision(_)
            | E::NoFreeSeparator
            | E::EmptyText,
        ) => EXIT_USAGE,
        _ => EXIT_IO,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|e| e.downcast_ref::<std::io::Error>())
        .any(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HYBRIDX_LOG", "warn")).init();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
