//! Command implementations behind the `qsl` binary.
//!
//! Commands write to injected streams and return a process exit code:
//! `0` success, `1` verification failure, `2` configuration error (nothing
//! is written to `--out`), `3` numerical failure.

mod config;
mod report;
mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use config::{
    default_epsilons, parse_list, resolve, HorizonMode, ModelChoice, Options, RunConfig, DEFAULT_GAMMA, DEFAULT_OMEGA,
    DEFAULT_STEPS,
};
pub use report::{real, report_record, reports_csv, sweep_csv, RowContext, REPORT_COLUMNS, SWEEP_COLUMNS};
pub use verify::{run_suite, GroupResult};

use crate::bounds::{divergence_scan, BoundAnalysis, BoundReport};
use crate::dynamics::{asymptotic_state, evolve, CatalogModel, MODEL_NAMES};
use crate::stopping::stopping_time_curve;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    EpsilonSweep,
    DivergenceScan,
    Verify,
    Models,
}

enum Failure {
    Config(String),
    Numerical { stage: &'static str, error: Error },
}

fn numerical(stage: &'static str) -> impl FnOnce(Error) -> Failure {
    move |error| Failure::Numerical { stage, error }
}

fn context(cfg: &RunConfig) -> RowContext {
    let params = cfg.model.parameters();
    RowContext {
        model: cfg.model.label(),
        gamma: params.map(|p| p.0),
        omega: params.map(|p| p.1),
        init: cfg.init_label.clone(),
    }
}

fn run_reports(cfg: &RunConfig) -> Result<Vec<BoundReport>, Failure> {
    let model = cfg.model.build();
    cfg.horizons
        .iter()
        .map(|&tau| {
            let traj = evolve(&model, &cfg.initial, tau, cfg.steps).map_err(numerical("dynamics"))?;
            BoundAnalysis::new(&traj, cfg.tolerance)
                .map_err(numerical("path-geometry"))?
                .final_report()
                .map_err(numerical("qsl-bounds"))
        })
        .collect()
}

fn cmd_run(opts: &Options) -> Result<Vec<u8>, Failure> {
    let cfg = resolve(opts, HorizonMode::Single).map_err(Failure::Config)?;
    Ok(reports_csv(&context(&cfg), &run_reports(&cfg)?))
}

fn cmd_divergence_scan(opts: &Options) -> Result<Vec<u8>, Failure> {
    let cfg = resolve(opts, HorizonMode::Scan).map_err(Failure::Config)?;
    let tau_max = *cfg.horizons.last().expect("validated non-empty");
    let spu = cfg.steps as f64 / tau_max;
    let reports = divergence_scan(&cfg.model.build(), &cfg.initial, &cfg.horizons, spu, cfg.tolerance)
        .map_err(numerical("qsl-bounds"))?;
    Ok(reports_csv(&context(&cfg), &reports))
}

fn cmd_epsilon_sweep(opts: &Options) -> Result<Vec<u8>, Failure> {
    let cfg = resolve(opts, HorizonMode::Single).map_err(Failure::Config)?;
    if cfg.horizons.len() != 1 {
        return Err(Failure::Config("epsilon-sweep takes a single --tau".into()));
    }
    let model = cfg.model.build();
    let (stationary, _) = asymptotic_state(&model, &cfg.initial).map_err(numerical("dynamics"))?;
    let traj = evolve(&model, &cfg.initial, cfg.horizons[0], cfg.steps).map_err(numerical("dynamics"))?;
    let curve = stopping_time_curve(&traj, &stationary, &cfg.epsilons).map_err(numerical("stopping-time"))?;
    Ok(sweep_csv(&curve))
}

fn models_listing() -> String {
    let mut s = String::from("Catalog models (qubit, dim 2). Parameters: --gamma (rate, >= 0, default 1), --omega (angular frequency, >= 0, default 1).\n\n");
    for name in MODEL_NAMES {
        let m = CatalogModel::from_name(name, DEFAULT_GAMMA, DEFAULT_OMEGA).expect("catalog name");
        let params = match m {
            CatalogModel::AmplitudeDamping { .. } | CatalogModel::PureDephasing { .. } => "gamma",
            CatalogModel::Precession { .. } => "omega",
            CatalogModel::Spiral { .. } => "gamma, omega",
        };
        let init = match m {
            CatalogModel::AmplitudeDamping { .. } => "excited",
            _ => "plus",
        };
        s.push_str(&format!(
            "  {name:<18} {}\n  {:<18} uses: {params}; default --init {init}\n\n",
            m.description(),
            ""
        ));
    }
    s.push_str(
        "Custom models: pass a JSON file to --model with fields\n  \
         {\"dim\": n, \"hamiltonian\": M, \"jumps\": [{\"matrix\": M, \"rate\": r}], \"name\": \"...\"}\n  \
         where M is a list of rows of [re, im] pairs.\n\
         Initial states (--init): excited, ground, plus, mixed, a Bloch triple \"x,y,z\", or a JSON matrix file.\n",
    );
    s
}

fn emit(data: &[u8], out: Option<&Path>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, data),
        None => stdout.write_all(data),
    }
}

/// Executes `command`. `config_file` is read first and `flags` override it.
pub fn execute(
    command: Command,
    flags: Options,
    config_file: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let opts = match config_file {
        Some(path) => match Options::from_json_file(path) {
            Ok(base) => base.overlay(flags),
            Err(e) => {
                let _ = writeln!(stderr, "config error: {e}");
                return EXIT_CONFIG;
            }
        },
        None => flags,
    };

    let result = match command {
        Command::Run => cmd_run(&opts),
        Command::EpsilonSweep => cmd_epsilon_sweep(&opts),
        Command::DivergenceScan => cmd_divergence_scan(&opts),
        Command::Models => {
            let _ = stdout.write_all(models_listing().as_bytes());
            return EXIT_OK;
        }
        Command::Verify => {
            let groups = run_suite();
            let mut failed = false;
            for g in &groups {
                match &g.counterexample {
                    None => {
                        let _ = writeln!(stdout, "PASS {} ({} checks)", g.name, g.checks);
                    }
                    Some(c) => {
                        failed = true;
                        let _ = writeln!(stdout, "FAIL {}", g.name);
                        let _ = writeln!(stderr, "{}: first counterexample: {c}", g.name);
                    }
                }
            }
            return if failed { EXIT_VERIFY_FAILED } else { EXIT_OK };
        }
    };

    match result {
        Ok(data) => match emit(&data, opts.out.as_deref(), stdout) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "config error: cannot write output: {e}");
                EXIT_CONFIG
            }
        },
        Err(Failure::Config(msg)) => {
            let _ = writeln!(stderr, "config error: {msg}");
            EXIT_CONFIG
        }
        Err(Failure::Numerical { stage, error }) => {
            let _ = writeln!(stderr, "numerical failure in {stage}: {error}");
            EXIT_NUMERICAL
        }
    }
}
