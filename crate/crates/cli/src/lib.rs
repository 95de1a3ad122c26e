//! Parser and command front end for the `creal` engine.
//!
//! The binary is a thin wrapper over [`run`]; everything it prints is
//! produced here so tests can check output without spawning a process.

pub mod commands;
pub mod error;
pub mod expr;
pub mod lex;
pub mod seqspec;

use clap::{Parser, Subcommand};

pub use commands::Report;
pub use error::{CliError, ParseError};

#[derive(Debug, Parser)]
#[command(name = "creal", version, about = "Exact real arithmetic over rational Cauchy sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression to within a tolerance
    Eval {
        expr: String,
        #[arg(long, default_value = "1e-10")]
        eps: String,
    },
    /// Derivative of a polynomial as a quotient of vanishing sequences
    Derive {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value = "1/2^n")]
        dx: String,
        #[arg(long, default_value = "1e-6")]
        eps: String,
        #[arg(long, default_value_t = 30)]
        depth: usize,
    },
    /// Limit-point queries on closed collections of reals
    Superclass {
        #[command(subcommand)]
        shape: Shape,
    },
    /// Interval families and 0/0 demonstrations
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Debug, Subcommand)]
pub enum Shape {
    /// The closed interval [a, b]; either end may be -inf / +inf
    Interval {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        member: String,
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// [0, 1/2], [1/2, 3/4], ... and the degenerate interval [1, 1]
    Zeno {
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
    },
    /// [-2^-k, 2^-k] and the degenerate interval [0, 0]
    Nested {
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
    },
    /// Three quotients of sequences tending to zero
    Zerodiv,
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    use commands::*;
    match &cli.command {
        Command::Eval { expr, eps } => eval(expr, eps),
        Command::Derive { poly, at, dx, eps, depth } => derive(&DeriveArgs { poly, at, dx, eps, depth: *depth }),
        Command::Superclass { shape: Shape::Interval { a, b, member, eps, depth, count } } => {
            superclass_interval(&IntervalArgs { a, b, member, eps, depth: *depth, count: *count })
        }
        Command::Demo { which } => match which {
            Demo::Zeno { eps, depth } => demo_zeno(eps, *depth),
            Demo::Nested { eps, depth } => demo_nested(eps, *depth),
            Demo::Zerodiv => demo_zerodiv(),
        },
    }
}
