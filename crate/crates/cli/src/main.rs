use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use promrep_core::PowersetCap;
use promrep_harness::{LawId, Mode};

mod commands;

use commands::{CmdError, Outcome};

#[derive(Parser)]
#[command(name = "promrep", version)]
#[command(about = "Check, transform and search finite proms and representations")]
struct Cli {
    /// Largest base set a powerset may be built over
    #[arg(long, global = true, default_value_t = PowersetCap::DEFAULT.0 as u64, value_parser = clap::value_parser!(u64).range(0..=16))]
    powerset_cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit the axioms of a named structure
    Check { file: PathBuf, name: String },

    /// Print the image of a named structure under a functor or transformation
    Apply {
        #[arg(value_enum)]
        functor: Functor,
        file: PathBuf,
        name: String,
        /// Source prom of the hom-set (required by `psi`)
        #[arg(long)]
        prom: Option<String>,
        /// Target representation of the hom-set (required by `tee`)
        #[arg(long)]
        rep: Option<String>,
    },

    /// Search for counterexamples to a catalogued law
    Verify {
        law: LawId,
        #[arg(long, default_value = "exhaustive", value_parser = parse_mode)]
        mode: Mode,
        /// Carrier bound: one value for every axis or one per axis
        #[arg(long, value_delimiter = ',')]
        max_size: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print an aligned table instead of key: value lines
        #[arg(long)]
        pretty: bool,
    },

    /// Re-run a witness file and report whether it still fails
    Replay { witness: PathBuf },

    /// List the law catalog
    Laws,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Functor {
    #[value(name = "R")]
    R,
    #[value(name = "M")]
    M,
    #[value(name = "MR")]
    Mr,
    #[value(name = "RM")]
    Rm,
    Unit,
    Counit,
    Psi,
    Tee,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: promrep_harness::HarnessError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = PowersetCap(cli.powerset_cap as usize);
    let result = match cli.command {
        Command::Check { file, name } => commands::check(&file, &name),
        Command::Apply {
            functor,
            file,
            name,
            prom,
            rep,
        } => commands::apply(functor, &file, &name, prom.as_deref(), rep.as_deref(), cap),
        Command::Verify {
            law,
            mode,
            max_size,
            trials,
            seed,
            jobs,
            pretty,
        } => {
            let config = promrep_harness::SearchConfig {
                law,
                mode,
                max_size,
                trials,
                seed,
                jobs,
                cap,
            };
            commands::verify(&config, pretty)
        }
        Command::Replay { witness } => commands::replay(&witness, cap),
        Command::Laws => commands::laws(),
    };
    match result {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Refuted) => ExitCode::from(1),
        Err(CmdError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
