mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qx_core::Error;

#[derive(Parser)]
#[command(name = "qx", version, about = "Exact module computations over Q[x]")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Arguments that take inline JSON, a file path, or `-` for stdin.
#[derive(Subcommand)]
enum Command {
    /// Smith normal form U·M·V = D of a polynomial matrix.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Invariant factors, free rank and cyclic generators of a module.
    Decompose {
        #[arg(long)]
        module: String,
    },
    /// Order ideal of an element.
    Order {
        #[arg(long)]
        module: String,
        #[arg(long)]
        element: String,
    },
    /// Exponent ideal of a module.
    Exponent {
        #[arg(long)]
        module: String,
    },
    /// Primary components of the torsion submodule.
    Primary {
        #[arg(long)]
        module: String,
        /// Only this prime.
        #[arg(long)]
        prime: Option<String>,
    },
    /// Whether a subgroup is σ-isolated.
    Isolate {
        #[arg(long)]
        module: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        sigma: String,
    },
    /// Smallest σ-isolated subgroup containing the given one.
    Isolator {
        #[arg(long)]
        module: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        sigma: String,
    },
    /// Build a separability witness for an element outside a subgroup.
    Separate {
        /// A generated instance, replacing the four flags below.
        #[arg(long, conflicts_with_all = ["module", "subgroup", "element", "omega"])]
        instance: Option<String>,
        #[arg(long, required_unless_present = "instance")]
        module: Option<String>,
        #[arg(long, required_unless_present = "instance")]
        subgroup: Option<String>,
        #[arg(long, required_unless_present = "instance")]
        element: Option<String>,
        #[arg(long, required_unless_present = "instance")]
        omega: Option<String>,
    },
    /// Check a separability witness.
    Verify {
        #[arg(long)]
        witness: String,
    },
    /// Whether every torsion element is ω-torsion.
    Residual {
        #[arg(long)]
        module: String,
        #[arg(long)]
        omega: String,
    },
    /// Arithmetic in the quasicyclic group.
    Qc {
        #[command(subcommand)]
        op: commands::QcOp,
    },
    /// Arithmetic in the free class-2 group.
    C2 {
        /// Rank for elements written as words.
        #[arg(long)]
        rank: Option<usize>,
        #[command(subcommand)]
        op: commands::C2Op,
    },
    /// Emit a random separation instance.
    Generate {
        #[arg(long)]
        seed: u64,
    },
}

/// A failed run: exit code, message for stderr, and optional report for stdout.
pub struct Failure {
    code: u8,
    message: String,
    report: Option<String>,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure {
            code: 1,
            message,
            report: None,
        }
    }

    pub fn rejected(message: String, report: Option<String>) -> Self {
        Failure {
            code: 2,
            message,
            report,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NotPrime(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = f.report {
                println!("{r}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
