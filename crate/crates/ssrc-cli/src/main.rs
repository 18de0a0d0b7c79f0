//! Command-line front end: builds states and encodings, evaluates the
//! three Wigner representations to files, runs the verification suites and
//! the convergence sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 dimension
//! mismatch, 4 construction failure.

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod formats;
mod manifest;

use error::CliError;

/// Worker-thread count from SSRC_THREADS (default 1). Grid points are
/// assembled by index, so results are byte-identical for any count.
pub fn threads_from_env() -> usize {
    std::env::var("SSRC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

#[derive(Parser)]
#[command(
    name = "ssrc",
    version,
    about = "Two-mode bosonic states, their spherical/planar/toric Wigner representations, qudit encodings, and CV-limit sweeps"
)]
struct Cli {
    /// Convention overrides, repeatable: weyl=symmetric-half|paper-literal,
    /// prefactor=2l+1|l+1, axis=x|matched-y, kappa=<float>.
    #[arg(long = "convention", global = true, value_name = "KEY=VALUE")]
    conventions: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a state and write it as JSON.
    State(commands::state::StateArgs),
    /// Evaluate a Wigner representation of a state onto CSV + summary JSON.
    Wigner(commands::wigner::WignerArgs),
    /// Build an encoding from (K, U) and write its report.
    Encode(commands::encode::EncodeArgs),
    /// Run a named verification suite; exit 0 iff every check passes.
    Verify(commands::verify::VerifyArgs),
    /// Run a convergence sweep from a config file onto CSV.
    Sweep(commands::sweep::SweepArgs),
}

fn parse_conventions(pairs: &[String]) -> Result<manifest::Conventions, CliError> {
    let mut conv = manifest::Conventions::default();
    for pair in pairs {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            CliError::Malformed(format!("--convention wants KEY=VALUE, got {pair}"))
        })?;
        match key {
            "weyl" => match value {
                "symmetric-half" | "paper-literal" => conv.weyl = value.into(),
                _ => {
                    return Err(CliError::Malformed(format!(
                        "unknown weyl convention {value}"
                    )))
                }
            },
            "prefactor" => match value {
                "2l+1" | "l+1" => conv.kernel_prefactor = value.into(),
                _ => return Err(CliError::Malformed(format!("unknown prefactor {value}"))),
            },
            "axis" => match value {
                "x" | "matched-y" => conv.kernel_rotation = value.into(),
                _ => return Err(CliError::Malformed(format!("unknown axis {value}"))),
            },
            "kappa" => {
                conv.cv_kappa = value
                    .parse()
                    .map_err(|_| CliError::Malformed(format!("bad kappa {value}")))?;
            }
            _ => return Err(CliError::Malformed(format!("unknown convention key {key}"))),
        }
    }
    Ok(conv)
}

fn main() {
    let cli = Cli::parse();
    let result = parse_conventions(&cli.conventions).and_then(|conv| match cli.command {
        Command::State(args) => commands::state::run(args, conv),
        Command::Wigner(args) => commands::wigner::run(args, conv),
        Command::Encode(args) => commands::encode::run(args, conv),
        Command::Verify(args) => commands::verify::run(args, conv),
        Command::Sweep(args) => commands::sweep::run(args, conv),
    });
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
