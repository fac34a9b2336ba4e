//! Command implementations. Each renders its artifact to bytes; writing is
//! left to [`crate::output`] so every artifact is deterministic and testable.

use std::fmt::Write as _;

use fibwalk::diagnostics::{
    distribution, geometric_times, ks_distance, mass_outside, rescaled_moments, scaling_exponent,
    spread_series, std_dev, PositionDistribution, ScalingFit,
};
use fibwalk::fourier::{eigensystem, evolve_fourier, min_grid_size, MomentumGrid};
use fibwalk::limit::{c0_from_mean, cdf, moment, weighted_density, LimitDensity};
use fibwalk::walk::{evolve_observed, word_string, CoinAngle, CoinSchedule, WalkState};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::{
    CompareArgs, Engine, ExponentArgs, Format, LimitArgs, RunConfig, SimulateArgs, SpectrumArgs,
};
use crate::error::{CliError, Result};
use crate::output::{fmt_f64, read_samples_csv};

/// Default checkpoint grid exponents.
const CHECKPOINT_EXPONENTS: (u32, u32) = (6, 13);

/// SHA-256 of the schedule word rendered as `1`/`2` characters.
pub fn word_digest(schedule: &CoinSchedule) -> String {
    hex::encode(Sha256::digest(word_string(schedule.word()).as_bytes()))
}

fn schedule_for(config: &RunConfig) -> CoinSchedule {
    CoinSchedule::new(config.kind(), config.steps)
}

fn start_state(config: &RunConfig) -> Result<WalkState> {
    let (alpha, beta) = config.normalized_amplitudes();
    Ok(WalkState::initial_with_room(alpha, beta, config.steps)?)
}

/// Times to snapshot: requested checkpoints up to `steps`, plus `steps`.
fn snapshot_times(steps: usize, checkpoints: Option<&[usize]>) -> Vec<usize> {
    let mut times: Vec<usize> = match checkpoints {
        None => Vec::new(),
        Some([]) => geometric_times(CHECKPOINT_EXPONENTS.0, CHECKPOINT_EXPONENTS.1, steps),
        Some(list) => list.iter().copied().filter(|&t| t <= steps).collect(),
    };
    times.push(steps);
    times.sort_unstable();
    times.dedup();
    times
}

/// Runs the position-space walk and collects distributions at `times`.
fn run_walk(config: &RunConfig, times: &[usize]) -> Result<Vec<PositionDistribution>> {
    let schedule = schedule_for(config);
    let initial = start_state(config)?;
    let mut snapshots = Vec::with_capacity(times.len());
    if times.first() == Some(&0) {
        snapshots.push(distribution(&initial));
    }
    let mut pending = times.iter().copied().filter(|&t| t > 0).peekable();
    evolve_observed(initial, &schedule, config.steps, |s| {
        if pending.peek() == Some(&s.time()) {
            snapshots.push(distribution(s));
            pending.next();
        }
    })?;
    Ok(snapshots)
}

#[derive(Serialize)]
struct Snapshot<'a> {
    t: usize,
    first_site: i64,
    probabilities: &'a [f64],
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    config: &'a RunConfig,
    engine: Engine,
    schedule_word_sha256: String,
    snapshots: Vec<Snapshot<'a>>,
}

pub fn simulate(args: &SimulateArgs) -> Result<Vec<u8>> {
    let steps = args.steps as usize;
    let config = RunConfig::new(&args.walk, steps, args.grid_size)?;
    let times = snapshot_times(steps, args.checkpoints.as_deref());
    let snapshots = match args.engine {
        Engine::Position => run_walk(&config, &times)?,
        Engine::Fourier => {
            let size = args.grid_size.unwrap_or_else(|| min_grid_size(steps));
            let min = min_grid_size(steps);
            if size < min {
                return Err(CliError::invalid(
                    "--grid-size",
                    format!("{size} is below the minimum {min} for {steps} steps"),
                ));
            }
            let grid = MomentumGrid::new(size)?;
            let schedule = schedule_for(&config);
            let (alpha, beta) = config.normalized_amplitudes();
            times
                .iter()
                .map(|&t| Ok(evolve_fourier(alpha, beta, &schedule, t, &grid)?))
                .collect::<Result<Vec<_>>>()?
        }
    };

    match args.format {
        Format::Csv => {
            let mut out = String::from("t,n,probability\n");
            for d in &snapshots {
                let t = d.time() as i64;
                for n in (-t..=t).step_by(2) {
                    writeln!(out, "{t},{n},{}", fmt_f64(d.get(n))).unwrap();
                }
            }
            Ok(out.into_bytes())
        }
        Format::Json => {
            let report = SimulateReport {
                config: &config,
                engine: args.engine,
                schedule_word_sha256: word_digest(&schedule_for(&config)),
                snapshots: snapshots
                    .iter()
                    .map(|d| Snapshot {
                        t: d.time(),
                        first_site: d.first_site(),
                        probabilities: d.masses(),
                    })
                    .collect(),
            };
            to_json(&report)
        }
    }
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Vec<u8>> {
    let theta = CoinAngle::new(args.theta)?;
    let data = eigensystem(&MomentumGrid::new(args.grid_size as usize)?, theta)?;
    let mut out = String::from("k,w,lambda1_re,lambda1_im,lambda2_re,lambda2_im,h1,h2\n");
    for p in &data.points {
        let [l1, l2] = p.eigenvalues;
        let [h1, h2] = p.group_velocities;
        let row = [p.k, p.w, l1.re, l1.im, l2.re, l2.im, h1, h2].map(fmt_f64);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

fn limit_params(a: f64, c0: f64) -> Result<LimitDensity> {
    LimitDensity::new(a, c0).map_err(|e| match e {
        fibwalk::Error::InvalidSupport(_) => CliError::invalid("--a", e.to_string()),
        other => CliError::invalid("--c0", other.to_string()),
    })
}

#[derive(Serialize)]
struct DensitySample {
    x: f64,
    density: f64,
    cdf: f64,
}

#[derive(Serialize)]
struct MomentRow {
    r: u32,
    value: f64,
}

#[derive(Serialize)]
struct LimitReport {
    a: f64,
    c0: f64,
    samples: Vec<DensitySample>,
    moments: Vec<MomentRow>,
}

pub fn limit(args: &LimitArgs) -> Result<Vec<u8>> {
    let params = limit_params(args.a, args.c0)?;
    let a = params.a();
    let last = (args.points - 1) as f64;
    let samples: Vec<DensitySample> = (0..args.points)
        .map(|i| {
            // Symmetric construction keeps the grid exactly mirror-symmetric.
            let x = a * (2.0 * i as f64 - last) / last;
            DensitySample {
                x,
                density: weighted_density(x, &params),
                cdf: cdf(x, &params),
            }
        })
        .collect();
    let moments: Vec<MomentRow> = (0..=args.r_max)
        .map(|r| MomentRow {
            r,
            value: moment(r, &params),
        })
        .collect();
    match args.format {
        Format::Json => to_json(&LimitReport {
            a,
            c0: params.c0(),
            samples,
            moments,
        }),
        Format::Csv => {
            let mut out = String::from("kind,r,x,density,cdf,moment\n");
            for s in &samples {
                writeln!(
                    out,
                    "sample,,{},{},{},",
                    fmt_f64(s.x),
                    fmt_f64(s.density),
                    fmt_f64(s.cdf)
                )
                .unwrap();
            }
            for m in &moments {
                writeln!(out, "moment,{},,,,{}", m.r, fmt_f64(m.value)).unwrap();
            }
            Ok(out.into_bytes())
        }
    }
}

#[derive(Debug, Serialize, PartialEq)]
pub struct MomentComparison {
    pub r: u32,
    pub empirical: f64,
    pub limit: f64,
    pub abs_error: f64,
    /// Omitted when the limit value is zero to round-off.
    pub rel_error: Option<f64>,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct OutsideMass {
    pub threshold_speed: f64,
    pub mass: f64,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct CompareResults {
    pub time: usize,
    pub a: f64,
    pub mean: f64,
    pub c0: f64,
    /// Set when the fitted c0 exceeded 1/a and was clamped to the boundary.
    pub c0_clamped: bool,
    pub std_dev: f64,
    pub moments: Vec<MomentComparison>,
    pub ks_distance: f64,
    pub mass_outside: OutsideMass,
}

#[derive(Serialize)]
struct CompareReport<'a> {
    config: &'a RunConfig,
    schedule_word_sha256: String,
    results: CompareResults,
}

/// Simulates the walk and compares `N_t / t` with the limit law at
/// `a = cos(theta1)`.
pub fn compare_results(config: &RunConfig, r_max: u32, margin: f64) -> Result<CompareResults> {
    let t = config.steps;
    let d = run_walk(config, &[t])?.pop().expect("final snapshot");
    let a = config.theta1.cos();
    let moments = rescaled_moments(&d, r_max.max(1))?;
    let mean = moments[0];
    let (c0, c0_clamped) = match c0_from_mean(mean, a) {
        Ok(c0) => (c0, false),
        Err(fibwalk::Error::InfeasibleAsymmetry { c0, bound }) => (c0.clamp(-bound, bound), true),
        Err(e) => return Err(e.into()),
    };
    let params = LimitDensity::new(a, c0)?;
    let moments = moments
        .iter()
        .zip(1..)
        .map(|(&empirical, r)| {
            let limit = moment(r, &params);
            let abs_error = (empirical - limit).abs();
            MomentComparison {
                r,
                empirical,
                limit,
                abs_error,
                rel_error: (limit.abs() > 1e-12).then(|| abs_error / limit.abs()),
            }
        })
        .collect();
    Ok(CompareResults {
        time: t,
        a,
        mean,
        c0,
        c0_clamped,
        std_dev: std_dev(&d),
        moments,
        ks_distance: ks_distance(&d, &params)?,
        mass_outside: OutsideMass {
            threshold_speed: a + margin,
            mass: mass_outside(&d, a + margin),
        },
    })
}

pub fn compare(args: &CompareArgs) -> Result<Vec<u8>> {
    if args.margin.is_nan() || args.margin < 0.0 {
        return Err(CliError::invalid("--margin", "must be non-negative"));
    }
    let config = RunConfig::new(&args.walk, args.steps as usize, None)?;
    let results = compare_results(&config, args.r_max, args.margin)?;
    to_json(&CompareReport {
        schedule_word_sha256: word_digest(&schedule_for(&config)),
        config: &config,
        results,
    })
}

/// `(t, sigma)` samples and their fit.
pub fn exponent(args: &ExponentArgs) -> Result<(Vec<u8>, Vec<u8>)> {
    let samples: Vec<(usize, f64)> = match &args.samples {
        Some(path) => read_samples_csv(path)?,
        None => {
            let mut times = match &args.times {
                Some(list) => list.clone(),
                None => {
                    if args.t_min_exp > args.t_max_exp || args.t_max_exp > 30 {
                        return Err(CliError::invalid(
                            "--t-max-exp",
                            "need t-min-exp <= t-max-exp <= 30",
                        ));
                    }
                    geometric_times(args.t_min_exp, args.t_max_exp, usize::MAX)
                }
            };
            times.sort_unstable();
            times.dedup();
            if times.len() < 2 {
                return Err(CliError::invalid("--times", "need at least 2 sample times"));
            }
            if times[0] == 0 {
                return Err(CliError::invalid(
                    "--times",
                    "sample times must be positive",
                ));
            }
            let horizon = *times.last().unwrap();
            let config = RunConfig::new(&args.walk, horizon, None)?;
            spread_series(&schedule_for(&config), start_state(&config)?, &times)?
        }
    };
    let points: Vec<(f64, f64)> = samples.iter().map(|&(t, s)| (t as f64, s)).collect();
    let fit: ScalingFit =
        scaling_exponent(&points).map_err(|e| CliError::invalid("--times", e.to_string()))?;
    let mut csv = String::from("t,sigma\n");
    for (t, s) in &samples {
        writeln!(csv, "{t},{}", fmt_f64(*s)).unwrap();
    }
    Ok((csv.into_bytes(), to_json(&fit)?))
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report types serialize");
    bytes.push(b'\n');
    Ok(bytes)
}
