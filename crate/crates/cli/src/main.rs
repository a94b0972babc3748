//! `bertrand`: payoffs, best replies, equilibria and quantum validation for
//! classical and quantum Bertrand duopolies.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl From<bertrand_core::Error> for CliError {
    fn from(e: bertrand_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "bertrand", version, about = "Classical and quantum Bertrand duopoly toolkit")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prices and payoffs of one strategy profile.
    Payoff {
        #[arg(long)]
        x1: f64,
        #[arg(long)]
        x2: f64,
    },
    /// Analytic best reply to an opponent's choice.
    BestReply {
        #[arg(long, default_value_t = 1)]
        player: u8,
        #[arg(long)]
        opp: f64,
    },
    /// Nash-equilibrium families.
    Equilibria {
        #[command(subcommand)]
        action: EquilibriaAction,
    },
    /// Best-reply correspondences sampled for plotting, plus breakpoints.
    PlotData {
        #[arg(long, value_enum, default_value = "best-replies")]
        figure: Figure,
    },
    /// Checks the quantum price maps against first-principles simulation.
    VerifyQuantum,
}

#[derive(Subcommand)]
enum EquilibriaAction {
    /// Every family with its domain and endpoint payoffs.
    List,
    /// Samples every family and checks Nash membership and payoffs.
    Verify,
    /// Grid epsilon-equilibria.
    Search,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Figure {
    BestReplies,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = &cli.config;
    match cli.command {
        Command::Payoff { x1, x2 } => commands::payoff(cfg, x1, x2).map(|_| true),
        Command::BestReply { player, opp } => commands::best_reply_cmd(cfg, player, opp),
        Command::Equilibria { action } => match action {
            EquilibriaAction::List => commands::equilibria_list(cfg).map(|_| true),
            EquilibriaAction::Verify => commands::equilibria_verify(cfg),
            EquilibriaAction::Search => commands::equilibria_search(cfg).map(|_| true),
        },
        Command::PlotData { figure: Figure::BestReplies } => commands::plot_data(cfg).map(|_| true),
        Command::VerifyQuantum => commands::verify_quantum(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("bertrand: verification failed");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("bertrand: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("bertrand: output error: {msg}");
            ExitCode::from(2)
        }
    }
}
