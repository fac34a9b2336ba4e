use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_6};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibwalk::walk::{CoinAngle, FibonacciOrdering, ScheduleKind};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Normalization tolerance for `--initial`.
pub const CLI_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "fibwalk",
    version,
    about = "Fibonacci quantum walk simulator and limit-law checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a walk and write its position distribution.
    Simulate(SimulateArgs),
    /// Write the dispersion, eigenvalues and group velocities on a momentum grid.
    Spectrum(SpectrumArgs),
    /// Tabulate the limit density, its CDF and moments.
    Limit(LimitArgs),
    /// Compare a simulated walk with the weak-limit law.
    Compare(CompareArgs),
    /// Fit the spreading exponent sigma(t) ~ t^c.
    Exponent(ExponentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleName {
    Constant,
    Alternating,
    Fibonacci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingName {
    OlderFirst,
    NewerFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Position,
    Fourier,
}

/// Schedule and initial state shared by the walk-running commands.
#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    #[arg(long, value_enum, default_value = "fibonacci")]
    pub schedule: ScheduleName,

    /// First coin angle in radians; the only angle of a constant schedule.
    #[arg(long, default_value_t = FRAC_PI_3, value_parser = parse_angle)]
    pub theta1: f64,

    /// Second coin angle in radians.
    #[arg(long, default_value_t = FRAC_PI_6, value_parser = parse_angle)]
    pub theta2: f64,

    /// Fibonacci block ordering in time.
    #[arg(long, value_enum, default_value = "older-first")]
    pub ordering: OrderingName,

    /// Initial amplitudes as `re(alpha),im(alpha),re(beta),im(beta)`.
    #[arg(long, value_parser = parse_initial, allow_hyphen_values = true,
          default_value = "0.7071067811865476,0,0,0.7071067811865476")]
    pub initial: [f64; 4],
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,

    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,

    /// Also emit snapshots at these times; without a list, at 2^6..2^13.
    #[arg(long, num_args = 0..=1, require_equals = false, value_delimiter = ',')]
    pub checkpoints: Option<Vec<usize>>,

    #[arg(long, value_enum, default_value = "position")]
    pub engine: Engine,

    /// Momentum grid size for the fourier engine; defaults to 2 * steps + 2.
    #[arg(long)]
    pub grid_size: Option<usize>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = parse_angle)]
    pub theta: f64,

    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid_size: u32,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Support half-width a = cos(theta), in (0, 1).
    #[arg(long)]
    pub a: f64,

    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c0: f64,

    #[arg(long, default_value_t = 4)]
    pub r_max: u32,

    /// Number of uniformly spaced x samples on [-a, a].
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub walk: WalkArgs,

    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,

    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub r_max: u32,

    /// Speed margin beyond cos(theta) for the outside-mass check.
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[command(flatten)]
    pub walk: WalkArgs,

    #[arg(long, default_value_t = 6)]
    pub t_min_exp: u32,

    #[arg(long, default_value_t = 13)]
    pub t_max_exp: u32,

    /// Explicit sample times, overriding the geometric grid.
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<usize>>,

    /// Fit `(t, sigma)` rows from this CSV instead of simulating.
    #[arg(long)]
    pub samples: Option<PathBuf>,

    /// CSV of `(t, sigma)`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// JSON fit record; defaults to `<output>.fit.json`, or stderr without `--output`.
    #[arg(long)]
    pub fit_output: Option<PathBuf>,
}

fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let theta: f64 = s.parse().map_err(|e| format!("{e}"))?;
    CoinAngle::new(theta)
        .map(CoinAngle::radians)
        .map_err(|e| e.to_string())
}

fn parse_initial(s: &str) -> std::result::Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    let values: [f64; 4] = parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated reals, got {}", v.len()))?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err("amplitudes must be finite".into());
    }
    Ok(values)
}

/// Run parameters echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub schedule: ScheduleName,
    pub theta1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingName>,
    pub initial: [f64; 4],
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
}

impl RunConfig {
    pub fn new(walk: &WalkArgs, steps: usize, grid_size: Option<usize>) -> Result<Self> {
        let [ar, ai, br, bi] = walk.initial;
        let norm = ar * ar + ai * ai + br * br + bi * bi;
        if (norm - 1.0).abs() > CLI_NORM_TOL {
            return Err(CliError::invalid(
                "--initial",
                format!("|alpha|^2 + |beta|^2 = {norm}, expected 1"),
            ));
        }
        let two_angles = walk.schedule != ScheduleName::Constant;
        Ok(RunConfig {
            schedule: walk.schedule,
            theta1: walk.theta1,
            theta2: two_angles.then_some(walk.theta2),
            ordering: (walk.schedule == ScheduleName::Fibonacci).then_some(walk.ordering),
            initial: walk.initial,
            steps,
            grid_size,
        })
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.initial[0], self.initial[1])
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.initial[2], self.initial[3])
    }

    /// Amplitudes renormalized to unit norm, which the walk constructor demands
    /// to 1e-12 while the CLI accepts 1e-9.
    pub fn normalized_amplitudes(&self) -> (Complex64, Complex64) {
        let (a, b) = (self.alpha(), self.beta());
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        (a / norm, b / norm)
    }

    pub fn kind(&self) -> ScheduleKind {
        let theta1 = CoinAngle::new(self.theta1).expect("validated by the parser");
        let theta2 = self
            .theta2
            .map(|t| CoinAngle::new(t).expect("validated by the parser"));
        match self.schedule {
            ScheduleName::Constant => ScheduleKind::Constant { theta: theta1 },
            ScheduleName::Alternating => ScheduleKind::Alternating {
                theta1,
                theta2: theta2.expect("two-angle schedule"),
            },
            ScheduleName::Fibonacci => ScheduleKind::Fibonacci {
                theta1,
                theta2: theta2.expect("two-angle schedule"),
                ordering: match self.ordering {
                    Some(OrderingName::NewerFirst) => FibonacciOrdering::NewerFirst,
                    _ => FibonacciOrdering::OlderFirst,
                },
            },
        }
    }
}

/// The symmetric default start, `(1/sqrt2, i/sqrt2)`.
pub const SYMMETRIC_INITIAL: [f64; 4] = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
