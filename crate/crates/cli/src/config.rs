//! Command-line arguments and the optional TOML run configuration.

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "lfd", version, about = "Zeros of polynomials in derivatives of L-functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML file with defaults for any of the options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for the CSV and JSON artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for band processing.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed of the band-edge jitter.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write whitespace-separated (x, y) series for plotting.
    #[arg(long, global = true)]
    pub plot_data: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree profile and the predicted zero-count constants.
    Analyze {
        expr: Option<PathBuf>,
        /// Also print the predicted count at this height.
        #[arg(long = "T")]
        t: Option<f64>,
    },
    /// Locate the zeros with t1 < Im s < t2.
    Zeros {
        expr: Option<PathBuf>,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        t2: Option<f64>,
        /// Shorthand for the window (0, T).
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long)]
        isolation_tol: Option<f64>,
    },
    /// Count nontrivial zeros band by band.
    Count {
        expr: Option<PathBuf>,
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        band_height: Option<f64>,
    },
    /// Zeros off the critical line over (T, 2T) or (t1, t2).
    Cluster {
        expr: Option<PathBuf>,
        /// One or more distances from the critical line.
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        t2: Option<f64>,
    },
    /// Zero counts around the trivial zeros far to the left.
    Audit {
        expr: Option<PathBuf>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        n_from: Option<u64>,
        #[arg(long)]
        n_to: Option<u64>,
    },
    /// Compare F(1 - s, dual) with its asymptotic main term.
    Fecheck {
        expr: Option<PathBuf>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long = "t", value_delimiter = ',')]
        t_grid: Vec<f64>,
    },
    /// Count against prediction; exits 1 when the slack exceeds the limit.
    Verify {
        expr: Option<PathBuf>,
        #[arg(long = "T")]
        t: Option<f64>,
        /// Largest accepted |empirical - predicted| / log T.
        #[arg(long)]
        slack: Option<f64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Zeros { .. } => "zeros",
            Command::Count { .. } => "count",
            Command::Cluster { .. } => "cluster",
            Command::Audit { .. } => "audit",
            Command::Fecheck { .. } => "fecheck",
            Command::Verify { .. } => "verify",
        }
    }

    pub fn expr(&self) -> Option<&Path> {
        match self {
            Command::Analyze { expr, .. }
            | Command::Zeros { expr, .. }
            | Command::Count { expr, .. }
            | Command::Cluster { expr, .. }
            | Command::Audit { expr, .. }
            | Command::Fecheck { expr, .. }
            | Command::Verify { expr, .. } => expr.as_deref(),
        }
    }
}

/// Defaults read from `--config`; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub expression: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub plot_data: Option<bool>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub delta: Option<Vec<f64>>,
    pub epsilon: Option<f64>,
    pub n_from: Option<u64>,
    pub n_to: Option<u64>,
    pub sigma: Option<f64>,
    pub t_grid: Option<Vec<f64>>,
    pub slack: Option<f64>,
    pub band_height: Option<f64>,
    pub isolation_tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
