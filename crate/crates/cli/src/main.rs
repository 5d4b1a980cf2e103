//! `parkfiber`: simulate parking experiments, count outcome fibers, and check
//! the formulas against an exhaustive oracle.
//!
//! Exit codes: 0 success, 1 parking failure (`simulate` only), 2 invalid input,
//! 3 budget exceeded, 4 oracle mismatch.

mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parkfiber::par::Jobs;
use parkfiber::{Budget, Rule};

use commands::Status;
use output::Format;

#[derive(Parser)]
#[command(
    name = "parkfiber",
    version,
    about = "Parking sequences and assortments: fibers, totals, and a brute-force oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Maximum number of simulations (or parking orders) a command may visit.
    #[arg(long, env = "PARKFIBER_BUDGET", global = true)]
    budget: Option<u64>,

    /// Worker threads for exhaustive searches (0 = all cores).
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Ps,
    Pa,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Ps => Rule::Sequence,
            RuleArg::Pa => Rule::Assortment,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Product,
    Sum,
}

#[derive(Args)]
struct LengthsArg {
    /// Car lengths, comma-separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    lengths: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Park the cars and report the assignment and parking order.
    Simulate {
        #[command(flatten)]
        lengths: LengthsArg,
        /// Preferred spots, comma-separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        prefs: Vec<i64>,
        #[arg(long, value_enum)]
        rule: RuleArg,
    },
    /// Per-position preference counts and the fiber size of a parking order.
    Fiber {
        #[command(flatten)]
        lengths: LengthsArg,
        /// Parking order in one-line notation, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        #[arg(long, value_enum)]
        rule: RuleArg,
    },
    /// Total number of parking sequences or assortments.
    Total {
        #[command(flatten)]
        lengths: LengthsArg,
        #[arg(long, value_enum)]
        rule: RuleArg,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
    },
    /// Fiber sizes under both rules for every parking order.
    Table {
        #[command(flatten)]
        lengths: LengthsArg,
    },
    /// Brute-force every preference list and compare with the formulas.
    Oracle {
        #[command(flatten)]
        lengths: LengthsArg,
        #[arg(long, value_enum)]
        rule: RuleArg,
        /// Restrict to the fiber of one parking order.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        /// With --sigma, print every witness preference list.
        #[arg(long)]
        list_witnesses: bool,
    },
    /// Identity-order fibers for a family of car lengths.
    Sequence {
        /// staircase, fibonacci, catalan or unit.
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Budget(String),
}

impl From<parkfiber::Error> for CliError {
    fn from(e: parkfiber::Error) -> Self {
        match e {
            parkfiber::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.map(Budget).unwrap_or_default();
    let jobs = Jobs(cli.jobs);

    let result = match &cli.command {
        Command::Simulate {
            lengths,
            prefs,
            rule,
        } => commands::simulate_cmd(&lengths.lengths, prefs, (*rule).into()),
        Command::Fiber {
            lengths,
            sigma,
            rule,
        } => commands::fiber_cmd(&lengths.lengths, sigma, (*rule).into()),
        Command::Total {
            lengths,
            rule,
            method,
        } => commands::total_cmd(&lengths.lengths, (*rule).into(), *method, budget, jobs),
        Command::Table { lengths } => commands::table_cmd(&lengths.lengths, budget),
        Command::Oracle {
            lengths,
            rule,
            sigma,
            list_witnesses,
        } => commands::oracle_cmd(
            &lengths.lengths,
            (*rule).into(),
            sigma.as_deref(),
            *list_witnesses,
            budget,
            jobs,
        ),
        Command::Sequence { family, max_n } => commands::sequence_cmd(family, *max_n),
    };

    match result {
        Ok((out, status)) => {
            let mut stdout = io::stdout().lock();
            if out
                .write(cli.format, &mut stdout)
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::ParkingFailed => ExitCode::from(1),
                Status::Mismatch => ExitCode::from(4),
            }
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
