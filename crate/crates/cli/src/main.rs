mod check;
mod demo;
mod error;
mod explore;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "mvforge", version, about = "Exact computations with McNaughton functions and MV-algebras")]
struct Cli {
    /// Append a floating-point approximation next to exact values.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate or compare MV terms.
    #[command(subcommand)]
    Term(TermCommand),
    /// Count rational points of each denominator in the cube or a Z-map range.
    Census(CensusArgs),
    /// Print the Farey–Stern–Brocot Bratteli diagram.
    Fsb(FsbArgs),
    /// Find a finite quotient in which a term function survives.
    Separate(SeparateArgs),
    /// Describe the primitive quotient at a point of [0,1].
    Quotient(QuotientArgs),
    /// Print a verified non-hopfian certificate.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
    /// Run exhaustive or randomized checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand, Debug)]
enum TermCommand {
    /// Evaluate a term at a rational point.
    Eval {
        #[arg(short = 'n', long)]
        arity: usize,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Comma-separated coordinates, e.g. "1/2,1/3".
        #[arg(short = 'p', long)]
        point: String,
    },
    /// Decide whether two terms define the same function on the cube.
    Eq {
        #[arg(short = 'n', long)]
        arity: usize,
        #[arg(long = "e1")]
        e1: String,
        #[arg(long = "e2")]
        e2: String,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(short = 'n', long)]
    arity: usize,
    /// Largest denominator.
    #[arg(short = 'b', long)]
    max_den: u64,
    /// Components of a Z-map, separated by ';'.
    #[arg(long)]
    zmap: Option<String>,
}

#[derive(Args, Debug)]
struct FsbArgs {
    #[arg(long)]
    depth: usize,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SeparateArgs {
    #[arg(short = 'n', long)]
    arity: usize,
    #[arg(short = 'e', long = "expr")]
    expr: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct QuotientArgs {
    /// A rational in [0,1].
    #[arg(long)]
    rho: Option<String>,
    /// "golden" or a quadratic irrational "a+b*sqrt(D)" in (0,1).
    #[arg(long)]
    theta: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DemoKind {
    NonhopfQuadrant,
    NonhopfEigen,
    ChangGerm,
    Shift,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Fuzz the defining MV equations on random term functions.
    Axioms {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate endomorphisms of a finite product of chains, e.g. "L3xL2".
    Hopfian { algebra: String },
    /// Check surjective ⇒ injective for an integer matrix, e.g. "[[2,1],[1,1]]".
    Znk { matrix: String },
}

/// `-e1`/`-e2` are accepted as spellings of `--e1`/`--e2`.
fn normalize_args() -> Vec<String> {
    std::env::args()
        .map(|a| match a.as_str() {
            "-e1" => "--e1".to_string(),
            "-e2" => "--e2".to_string(),
            _ => a,
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    let approx = cli.approx;
    match cli.command {
        Command::Term(TermCommand::Eval { arity, expr, point }) => explore::term_eval(arity, &expr, &point, approx),
        Command::Term(TermCommand::Eq { arity, e1, e2 }) => explore::term_eq(arity, &e1, &e2),
        Command::Census(a) => explore::census(a.arity, a.max_den, a.zmap.as_deref()),
        Command::Fsb(a) => explore::fsb(a.depth, a.dot, a.json),
        Command::Separate(a) => explore::separate(a.arity, &a.expr),
        Command::Quotient(a) => explore::quotient(a.rho.as_deref(), a.theta.as_deref(), approx),
        Command::Demo { which } => match which {
            DemoKind::NonhopfQuadrant => demo::nonhopf_quadrant(),
            DemoKind::NonhopfEigen => demo::nonhopf_eigen(),
            DemoKind::ChangGerm => demo::chang_germ(),
            DemoKind::Shift => demo::shift(),
        },
        Command::Check(CheckCommand::Axioms { trials, seed }) => check::axioms(trials, seed),
        Command::Check(CheckCommand::Hopfian { algebra }) => check::hopfian(&algebra),
        Command::Check(CheckCommand::Znk { matrix }) => check::znk(&matrix),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(normalize_args());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
