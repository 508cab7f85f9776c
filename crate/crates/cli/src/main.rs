//! `immcalc`: JSON front end for the form, Kirby, group and Smale invariant
//! calculations in `immcalc-core`.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
//! 3 internal inconsistency.

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use immcalc_core::congruence::Budget;

use commands::{FamilyArg, ProfileArg};
use error::CliError;
use report::{Outcome, Report, SCHEMA};

#[derive(Parser)]
#[command(name = "immcalc", version, about = "Intersection forms, Kirby moves and Smale invariants")]
struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Print a one-line human summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a 4-manifold expression such as "P(A,4;2) + SxS".
    Eval { expr: String },
    /// Smale invariant of f_n or g_n.
    Family {
        #[arg(value_enum)]
        which: FamilyArg,
        #[arg(long)]
        n: u64,
        /// Include the bookkeeping trace.
        #[arg(long)]
        trace: bool,
    },
    /// Check a stabilisation identity over a range of n (e.g. 2..6, inclusive).
    Verify {
        /// A-stable, A-blowdown, D-stable, D-blowdown or cover-Estar.
        name: String,
        range: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a congruence between two forms (matrix literals or expressions).
    Congruent {
        left: String,
        right: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Kirby move scripts.
    Kirby {
        #[command(subcommand)]
        action: KirbyCommand,
    },
    /// Finite groups.
    Group {
        #[command(subcommand)]
        group: GroupCommand,
    },
    /// Rank-2-point check of the perturbed branched-cover model.
    Lemma46 {
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Cutoff of the bump function, as p/q or a decimal.
        #[arg(long, default_value = "1/20")]
        c: String,
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Both)]
        profile: ProfileArg,
    },
}

#[derive(Subcommand)]
enum KirbyCommand {
    /// Replay a script and check its expectation.
    Run { path: PathBuf },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// The dicyclic group of order 4n.
    Dic {
        #[arg(long)]
        n: u64,
        /// Also check the defining relations and the quaternion model.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long)]
    entry_bound_factor: Option<i64>,
    /// Compare invariants only; never search.
    #[arg(long)]
    invariants_only: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = if self.invariants_only { Budget::invariants_only() } else { Budget::default() };
        if let Some(d) = self.max_depth {
            b.max_depth = d;
        }
        if let Some(s) = self.max_states {
            b.max_states = s;
        }
        if let Some(f) = self.entry_bound_factor {
            b.entry_bound_factor = f;
        }
        b
    }
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Eval { expr } => commands::eval(expr),
        Command::Family { which, n, trace } => commands::family(*which, *n, *trace),
        Command::Verify { name, range, budget } => commands::verify(name, range, &budget.budget()),
        Command::Congruent { left, right, budget } => commands::congruent_forms(left, right, &budget.budget()),
        Command::Kirby { action: KirbyCommand::Run { path } } => commands::kirby_run(path),
        Command::Group { group: GroupCommand::Dic { n, check } } => commands::group_dic(*n, *check),
        Command::Lemma46 { grid, c, margin, profile } => commands::lemma46(*grid, c, *margin, *profile),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (status, result, error, summary) = match run(&cli.command) {
        Ok(o) => (o.status, Some(o.result), None, o.summary),
        Err(e) => {
            eprintln!("immcalc: {e}");
            let summary = format!("error: {e}");
            (e.status(), None, Some(json!({ "kind": e.kind(), "message": e.to_string() })), summary)
        }
    };
    if cli.human {
        println!("{summary}");
    } else {
        let report = Report {
            schema: SCHEMA,
            command: &argv,
            ok: status == report::Status::Ok,
            result: result.as_ref(),
            error,
        };
        let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
        println!("{}", text.expect("report serialises"));
    }
    ExitCode::from(status.code() as u8)
}
