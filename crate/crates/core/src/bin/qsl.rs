use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsl_core::cli::{self, parse_list, Command, Options};

/// Quantum speed limit estimates along open-system trajectories.
#[derive(Parser)]
#[command(name = "qsl", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bound report at each requested horizon.
    Run(Flags),
    /// First times below each trace-distance threshold, with the noise floor.
    EpsilonSweep(Flags),
    /// Bound reports along one long trajectory at ascending horizons.
    DivergenceScan(Flags),
    /// Run the invariant suite.
    Verify,
    /// List catalog models and their parameters.
    Models,
}

#[derive(Args)]
struct Flags {
    /// Catalog name or path to a JSON model.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Comma-separated horizons.
    #[arg(long, allow_hyphen_values = true)]
    tau_list: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    /// excited | ground | plus | mixed | "x,y,z" | matrix JSON path.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    /// Comma-separated thresholds, strictly descending.
    #[arg(long)]
    eps_list: Option<String>,
    #[arg(long)]
    atol_attainable: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with the same fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn split(self) -> Result<(Options, Option<PathBuf>), String> {
        let list = |flag: &str, v: Option<String>| {
            v.map(|s| parse_list(&s).map_err(|e| format!("--{flag}: {e}")))
                .transpose()
        };
        let opts = Options {
            model: self.model,
            gamma: self.gamma,
            omega: self.omega,
            tau: self.tau,
            tau_list: list("tau-list", self.tau_list)?,
            steps: self.steps,
            init: self.init,
            eps_list: list("eps-list", self.eps_list)?,
            atol_attainable: self.atol_attainable,
            out: self.out,
        };
        Ok((opts, self.config))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let (command, flags) = match cli.command {
        Cmd::Run(f) => (Command::Run, Some(f)),
        Cmd::EpsilonSweep(f) => (Command::EpsilonSweep, Some(f)),
        Cmd::DivergenceScan(f) => (Command::DivergenceScan, Some(f)),
        Cmd::Verify => (Command::Verify, None),
        Cmd::Models => (Command::Models, None),
    };
    let (opts, config) = match flags.map(Flags::split).transpose() {
        Ok(split) => split.unwrap_or_default(),
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(cli::EXIT_CONFIG as u8);
        }
    };
    let code = cli::execute(
        command,
        opts,
        config.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
