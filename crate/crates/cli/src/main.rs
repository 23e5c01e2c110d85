//! `degmap`: command-line front end to the norm-principle calculus.
//!
//! Exit status: 0 success or verified, 1 a verification was refuted,
//! 2 usage error, 3 unsupported input (capability error).

mod commands;
mod overrides;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{ScenarioChoice, Style, EXIT_USAGE};
use overrides::Overrides;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "degmap", version, about = "Exact norm-principle calculus for simple algebraic groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// More detail; repeat for full traces.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Show raw coordinate vectors instead of element names.
    #[arg(long, global = true)]
    coords: bool,
    /// Scenario override file (key = value lines).
    #[arg(long = "override", global = true, value_name = "FILE")]
    override_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Disc {
    Trivial,
    Nontrivial,
}

#[derive(Debug, clap::Args)]
struct ScenarioArgs {
    /// spin, gorth, e6 or e7.
    #[arg(long)]
    scenario: String,
    /// Rank n of D_n; required for spin and gorth.
    #[arg(long)]
    rank: Option<usize>,
    /// e6 only: use the type-6 variety (exchanges vertices 1 and 6).
    #[arg(long)]
    mirror: bool,
}

#[derive(Debug, clap::Args)]
struct PhiArgs {
    /// The cocharacter, as an integer.
    #[arg(long, allow_hyphen_values = true)]
    phi: i64,
    /// Discriminant over the field (gorth only).
    #[arg(long, value_enum, default_value_t = Disc::Trivial)]
    disc: Disc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Center character group, restriction table and Tits-algebra labels.
    Center {
        /// Cartan type (A, D or E).
        #[arg(long)]
        kind: String,
        #[arg(long)]
        rank: usize,
    },
    /// X(phi) with its intermediate stages.
    Xphi {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Omega(phi) as its antichain of minimal complements.
    Omega {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        phi: PhiArgs,
        /// Print at most this many minimal complements.
        #[arg(long, default_value_t = 64)]
        max_print: usize,
        /// Also list every member of Omega(phi).
        #[arg(long)]
        full: bool,
    },
    /// Decide whether phi is f-special for a given Tits index.
    Special {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        phi: PhiArgs,
        /// Distinguished vertices, e.g. `1,7` (empty for anisotropic).
        #[arg(long, default_value = "")]
        distinguished: String,
    },
    /// Verify a corollary, or all of them.
    Verify {
        /// springer, bfl, rost, rost6 or e7.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        corollary: Option<String>,
        /// Rank n for springer and bfl.
        #[arg(long, conflicts_with = "all")]
        rank: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// List the admissible field states of a scenario.
    States {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn choice<'a>(a: &'a ScenarioArgs, overrides: Option<&'a Overrides>) -> ScenarioChoice<'a> {
    ScenarioChoice { name: &a.scenario, rank: a.rank, mirror: a.mirror, overrides }
}

fn run(cli: &Cli) -> Result<commands::Output, (i32, String)> {
    let overrides = match &cli.override_file {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
            let o = Overrides::parse(&text).map_err(|e| (EXIT_USAGE, format!("{}:{e}", path.display())))?;
            Some(o)
        }
    };
    let style = Style { coords: cli.coords, verbose: cli.verbose };
    let ov = overrides.as_ref();
    let needs_no_override = |what: &str| {
        if ov.is_some() {
            Err((EXIT_USAGE, format!("--override does not apply to {what}")))
        } else {
            Ok(())
        }
    };
    let disc = |p: &PhiArgs| p.disc == Disc::Trivial;
    let result = match &cli.command {
        Command::Center { kind, rank } => {
            needs_no_override("center")?;
            commands::center(kind, *rank, style)
        }
        Command::Xphi { scenario, phi } => commands::xphi(&choice(scenario, ov), phi.phi, disc(phi), style),
        Command::Omega { scenario, phi, max_print, full } => {
            commands::omega_cmd(&choice(scenario, ov), phi.phi, disc(phi), *max_print, *full, style)
        }
        Command::Special { scenario, phi, distinguished } => {
            commands::special(&choice(scenario, ov), phi.phi, disc(phi), distinguished, style)
        }
        Command::Verify { corollary: Some(c), rank, .. } => commands::verify_one(c, *rank, ov, style),
        Command::Verify { .. } => {
            needs_no_override("verify --all")?;
            commands::verify_everything(style)
        }
        Command::States { scenario } => commands::states(&choice(scenario, ov)),
    };
    result.map_err(|e| (commands::exit_code(&e), e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => out.json + "\n",
            };
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(body.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err((code, msg)) => {
            eprintln!("degmap: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
