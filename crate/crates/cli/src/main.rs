//! `classprod`: exact character and class-product computations for Alt(n).

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use classprod_core::Error;

/// Exit status for a command-line usage or input error.
const EXIT_USAGE: u8 = 1;
/// Exit status when an exact computation is internally inconsistent, or the
/// engine and the oracle disagree.
const EXIT_INCONSISTENT: u8 = 2;
/// Exit status when `n` is outside the range of the chosen backend.
const EXIT_CAPABILITY: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "classprod",
    version,
    about = "Exact character theory and conjugacy-class products in Alt(n)",
    after_help = "Class names are cycle types such as \"3,3,1\". An exceptional type (odd, distinct parts) \
                  splits in Alt(n); name one half with a \"+\" or \"-\" suffix (\"5,3+\"). A bare exceptional \
                  name in a set argument stands for both halves. Sets are class names separated by \";\".\n\n\
                  Exit status: 0 ok, 1 usage error, 2 internal inconsistency or engine/oracle disagreement, \
                  3 n too large for the chosen mode."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Character-table engine (n ≤ 16).
    Engine,
    /// Brute-force permutation arithmetic (n ≤ 8).
    Oracle,
    /// Run both and fail if they disagree.
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Sym,
    Alt,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ModeArg {
    #[arg(long, value_enum, default_value_t = Mode::Engine)]
    pub mode: Mode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the partitions of n in reverse lexicographic order.
    Partitions {
        #[arg(long)]
        n: usize,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
    },
    /// A character value: Sym(n) by partition and cycle type, or Alt(n) by
    /// character and class name.
    CharValue {
        #[arg(long)]
        n: usize,
        #[arg(long, alias = "partition")]
        character: String,
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value_t = Group::Alt)]
        group: Group,
    },
    /// Degree of an irreducible character.
    Degree {
        #[arg(long)]
        n: usize,
        /// Partition, with a "+"/"-" suffix for a split Alt(n) character.
        #[arg(long, alias = "character")]
        partition: String,
        #[arg(long, value_enum, default_value_t = Group::Alt)]
        group: Group,
    },
    /// All conjugacy classes of Alt(n) with size, δ and inverse class.
    Classes {
        #[arg(long)]
        n: usize,
    },
    /// δ of a class: n minus the number of cycles.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: String,
    },
    /// The set of classes meeting the product of two normal sets.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Whether the class g meets AB, with the number of factorisations.
    Contains {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Least k ≤ max-k with C^k = Alt(n).
    Covering {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Check that pairs of Sym(n)-classes with large δ sum produce every l-cycle.
    Dvir {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Sweep all quadruples of classes with pairwise size products at least
    /// |G|^(1+ε) and test whether ABCD = Alt(n).
    VerifyTheorem {
        #[arg(long)]
        n: usize,
        /// Exact rational, e.g. "1/10".
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        /// Print at most this many quadruples in text mode.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// The long-cycle product statements, checked exhaustively.
    Excon {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Classes of size at least |G|^γ with their δ/n.
    DeltaReport {
        #[arg(long)]
        n: usize,
        /// Exact rational in (0, 1), e.g. "1/2".
        #[arg(long, default_value = "1/2")]
        gamma: String,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INCONSISTENT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capability { .. } => EXIT_CAPABILITY,
            Error::Inconsistency(_) | Error::IncompatibleRadicands(..) => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"))
                }
                Format::Text => print!("{}", report.text),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
