//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use risfocus_core::channel::DistanceModel;

use crate::config::{Overlay, SpacingSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "risfocus",
    version,
    about = "Near-field gain sweeps for phase-quantized reflective surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the focal distance and report gain at the fixed receiver
    DepthSweep(SweepArgs),
    /// Sweep the focal azimuth and report gain at the fixed receiver
    AngleSweep(SweepArgs),
    /// Sweep focal distance and azimuth jointly
    GridSweep(GridArgs),
    /// Check Monte Carlo gain averages against the closed form
    McValidate(McArgs),
    /// List the built-in experiment presets
    PresetList,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Start from a named preset (see preset-list)
    #[arg(long)]
    pub preset: Option<String>,
    /// Read key = value settings from a file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Carrier frequency in GHz
    #[arg(long, allow_negative_numbers = true)]
    pub freq_ghz: Option<f64>,
    /// Element rows on the surface
    #[arg(long)]
    pub rows: Option<usize>,
    /// Element columns on the surface
    #[arg(long)]
    pub cols: Option<usize>,
    /// Element spacing: meters, or wavelengths with a wl suffix (0.5wl)
    #[arg(long)]
    pub spacing: Option<String>,
    /// Phase control resolution in bits
    #[arg(long)]
    pub bits: Option<u32>,
    /// Transmitter azimuth in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub tx_az_deg: Option<f64>,
    /// Transmitter elevation in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub tx_el_deg: Option<f64>,
    /// Transmitter distance in meters
    #[arg(long, allow_negative_numbers = true)]
    pub tx_dist_m: Option<f64>,
    /// Receiver azimuth in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub rx_az_deg: Option<f64>,
    /// Receiver elevation in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub rx_el_deg: Option<f64>,
    /// Receiver distance in meters
    #[arg(long, allow_negative_numbers = true)]
    pub rx_dist_m: Option<f64>,
    /// Monte Carlo trials per sweep point
    #[arg(long)]
    pub trials: Option<usize>,
    /// Seed for the per-point random deviation streams
    #[arg(long)]
    pub seed: Option<u64>,
    /// Element distance model
    #[arg(long, value_enum)]
    pub distance_model: Option<ModelArg>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Append decibel columns
    #[arg(long)]
    pub db: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Sweep start (meters for depth, degrees for azimuth)
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    /// Sweep stop (meters for depth, degrees for azimuth)
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    pub points: Option<usize>,
    /// Add Monte Carlo mean and standard error columns
    #[arg(long)]
    pub with_mc: bool,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Focal sweep start in meters
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    /// Focal sweep stop in meters
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Focal distance sweep start in meters
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    /// Focal distance sweep stop in meters
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Focal distance points
    #[arg(long)]
    pub points: Option<usize>,
    /// Focal azimuth sweep start in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub start2: Option<f64>,
    /// Focal azimuth sweep stop in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub stop2: Option<f64>,
    /// Focal azimuth points
    #[arg(long)]
    pub points2: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Exact,
    Taylor,
}

impl From<ModelArg> for DistanceModel {
    fn from(arg: ModelArg) -> Self {
        match arg {
            ModelArg::Exact => DistanceModel::Exact,
            ModelArg::Taylor => DistanceModel::Taylor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl CommonArgs {
    /// Flags become an overlay; boolean flags only override when set, so a
    /// config file can still switch them on.
    pub fn to_overlay(&self) -> Result<Overlay, CliError> {
        let spacing = match &self.spacing {
            Some(text) => Some(SpacingSpec::parse(text).map_err(CliError::Config)?),
            None => None,
        };
        Ok(Overlay {
            preset: self.preset.clone(),
            freq_ghz: self.freq_ghz,
            rows: self.rows,
            cols: self.cols,
            spacing,
            bits: self.bits,
            tx_az_deg: self.tx_az_deg,
            tx_el_deg: self.tx_el_deg,
            tx_dist_m: self.tx_dist_m,
            rx_az_deg: self.rx_az_deg,
            rx_el_deg: self.rx_el_deg,
            rx_dist_m: self.rx_dist_m,
            trials: self.trials,
            seed: self.seed,
            model: self.distance_model.map(DistanceModel::from),
            db: if self.db { Some(true) } else { None },
            ..Overlay::default()
        })
    }
}
