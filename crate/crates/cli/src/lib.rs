//! Command-line companion to the gain-model library: runs focal sweeps and
//! Monte Carlo checks, writing CSV or JSON tables.

pub mod args;
pub mod config;
pub mod emit;
pub mod experiment;

use std::path::PathBuf;

use args::{Cli, Command, CommonArgs, FormatArg};
use config::{parse_config_text, Overlay, SweepKind, PRESETS};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("monte carlo check failed: {failed} of {total} points outside three standard errors")]
    Validation { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Validation { .. } => 4,
        }
    }
}

impl From<risfocus_core::Error> for CliError {
    fn from(err: risfocus_core::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

fn file_overlay(path: Option<&PathBuf>) -> Result<Overlay, CliError> {
    let Some(path) = path else {
        return Ok(Overlay::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_text(&text).map_err(|msg| CliError::Config(format!("{}: {msg}", path.display())))
}

struct OutputOptions {
    out: Option<PathBuf>,
    format: FormatArg,
}

fn run_sweep(kind: SweepKind, common: &CommonArgs, sweep: Overlay) -> Result<(), CliError> {
    let file = file_overlay(common.config.as_ref())?;
    let flags = sweep.over(common.to_overlay()?);
    let exp = config::resolve(kind, file, flags)?;
    let outcome = experiment::run(&exp)?;

    let output = OutputOptions {
        out: common.out.clone(),
        format: common.format,
    };
    let text = match output.format {
        FormatArg::Csv => emit::render_csv(&outcome.table),
        FormatArg::Json => emit::render_json(kind.name(), &emit::config_echo(&exp), &outcome.table),
    };
    emit::write_out(output.out.as_deref(), &text)?;

    // Validation verdict comes after the table is written, so the numbers
    // behind a failure are always available for inspection.
    if let Some((failed, total)) = outcome.mc_failures {
        if failed as f64 > 0.1 * total as f64 {
            return Err(CliError::Validation { failed, total });
        }
    }
    Ok(())
}

fn print_presets() -> Result<(), CliError> {
    let mut text = String::new();
    for preset in PRESETS {
        text.push_str(&format!("{}\n    {}\n", preset.name, preset.summary));
        text.push_str(&format!(
            "    {} GHz, {}x{} elements at {}, {}-bit phases, trials {}, seed {}\n",
            preset.freq_ghz,
            preset.rows,
            preset.cols,
            preset.spacing,
            preset.bits,
            preset.trials,
            preset.seed,
        ));
    }
    emit::write_out(None, &text)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::DepthSweep(a) => {
            let sweep = Overlay {
                start: a.start,
                stop: a.stop,
                points: a.points,
                with_mc: if a.with_mc { Some(true) } else { None },
                ..Overlay::default()
            };
            run_sweep(SweepKind::Depth, &a.common, sweep)
        }
        Command::AngleSweep(a) => {
            let sweep = Overlay {
                start: a.start,
                stop: a.stop,
                points: a.points,
                with_mc: if a.with_mc { Some(true) } else { None },
                ..Overlay::default()
            };
            run_sweep(SweepKind::Angle, &a.common, sweep)
        }
        Command::GridSweep(a) => {
            let sweep = Overlay {
                start: a.start,
                stop: a.stop,
                points: a.points,
                start2: a.start2,
                stop2: a.stop2,
                points2: a.points2,
                ..Overlay::default()
            };
            run_sweep(SweepKind::Grid, &a.common, sweep)
        }
        Command::McValidate(a) => {
            let sweep = Overlay {
                start: a.start,
                stop: a.stop,
                points: a.points,
                ..Overlay::default()
            };
            run_sweep(SweepKind::McValidate, &a.common, sweep)
        }
        Command::PresetList => print_presets(),
    }
}
