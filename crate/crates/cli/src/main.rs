use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use doctrina::commands::{self, limits_from_env};
use doctrina::{CheckFlags, CliError, DecideOptions, GenKind, Output};
use doctrina_core::Degree;

#[derive(Parser)]
#[command(name = "doctrina", version, about = "Belief revision and decisions over propositional doctrines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Conjunction,
    Equivalence,
    Order,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Blake canonical form of a doctrine.
    Bcf { doctrine: PathBuf },
    /// Revise a valuation and print the fixed point.
    Revise {
        doctrine: PathBuf,
        valuation: PathBuf,
        #[arg(long, value_enum, default_value = "upper")]
        direction: Direction,
    },
    /// Revise, then decide at a margin.
    Decide {
        doctrine: PathBuf,
        valuation: PathBuf,
        #[arg(long, default_value = "0")]
        margin: Degree,
        /// Compare v*_p with the margin (definite Horn doctrines only).
        #[arg(long)]
        unilateral: bool,
        /// Decide on the lower revision instead of the upper one.
        #[arg(long)]
        lower: bool,
    },
    /// Structural checks on a doctrine.
    Check {
        doctrine: PathBuf,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        horn: bool,
        /// Comma-separated literals, e.g. "~e_ab,~e_ac".
        #[arg(long, value_name = "LITERALS")]
        autarky: Option<String>,
        /// Whether a valuation is invariant under revision.
        #[arg(long, value_name = "VALUATION")]
        consistent: Option<PathBuf>,
        /// Whether a decision file is definitely consistent.
        #[arg(long, value_name = "ASSIGNMENT")]
        definite: Option<PathBuf>,
        #[arg(long)]
        unquestionable: bool,
        /// Compare the canonical form with brute-force prime implicates.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a domain doctrine.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',')]
        items: Vec<String>,
        /// Emit every prime implicate instead of the triangle or cycle form.
        #[arg(long)]
        blake: bool,
    },
    /// Weighted average of valuation files.
    Aggregate { weights: PathBuf },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Bcf { doctrine } => commands::bcf(&doctrine, &limits),
        Command::Revise {
            doctrine,
            valuation,
            direction,
        } => commands::revise(&doctrine, &valuation, matches!(direction, Direction::Lower), &limits),
        Command::Decide {
            doctrine,
            valuation,
            margin,
            unilateral,
            lower,
        } => commands::decide(
            &doctrine,
            &valuation,
            DecideOptions {
                margin,
                unilateral,
                lower,
            },
            &limits,
        ),
        Command::Check {
            doctrine,
            prime,
            horn,
            autarky,
            consistent,
            definite,
            unquestionable,
            oracle,
        } => {
            let flags = CheckFlags {
                prime,
                horn,
                autarky,
                consistent,
                definite,
                unquestionable,
                oracle,
            };
            commands::check(&doctrine, &flags, &limits)
        }
        Command::Gen { kind, items, blake } => {
            let kind = match kind {
                Kind::Conjunction => GenKind::Conjunction,
                Kind::Equivalence => GenKind::Equivalence,
                Kind::Order => GenKind::Order,
            };
            if kind != GenKind::Conjunction && items.is_empty() {
                return Err(CliError::Usage("--items is required for this kind".into()));
            }
            commands::gen(kind, &items, blake, &limits)
        }
        Command::Aggregate { weights } => commands::aggregate(&weights),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
