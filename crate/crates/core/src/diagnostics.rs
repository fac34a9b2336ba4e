//! Observables of simulated walks and their comparison with the limit law.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limit::{cdf, LimitDensity};
use crate::walk::{evolve_observed, CoinSchedule, WalkState};

/// Normalization tolerance for distributions.
pub const DISTRIBUTION_NORM_TOL: f64 = 1e-10;

/// `P(N_t = n)` over a contiguous block of sites at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    time: usize,
    first_site: i64,
    masses: Vec<f64>,
}

impl PositionDistribution {
    /// Masses for sites `first_site, first_site + 1, ...`.
    pub fn from_dense(time: usize, first_site: i64, masses: Vec<f64>) -> Result<Self> {
        if let Some(bad) = masses.iter().position(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "mass {} at site {} is not a finite non-negative number",
                masses[bad],
                first_site + bad as i64
            )));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_NORM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        Ok(PositionDistribution {
            time,
            first_site,
            masses,
        })
    }

    /// Builds a distribution from arbitrary `(site, mass)` pairs; sites not
    /// listed carry zero mass.
    pub fn from_sites<I>(time: usize, sites: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        let mut map = BTreeMap::new();
        for (n, p) in sites {
            if map.insert(n, p).is_some() {
                return Err(Error::InvalidDistribution(format!("site {n} listed twice")));
            }
        }
        let (Some((&first, _)), Some((&last, _))) = (map.first_key_value(), map.last_key_value())
        else {
            return Err(Error::InvalidDistribution("no sites".into()));
        };
        let mut masses = vec![0.0; (last - first + 1) as usize];
        for (n, p) in map {
            masses[(n - first) as usize] = p;
        }
        Self::from_dense(time, first, masses)
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn first_site(&self) -> i64 {
        self.first_site
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `P(N_t = n)`, zero outside the stored block.
    pub fn get(&self, n: i64) -> f64 {
        let idx = n - self.first_site;
        if idx < 0 {
            return 0.0;
        }
        self.masses.get(idx as usize).copied().unwrap_or(0.0)
    }

    /// `(site, mass)` pairs in increasing site order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let first = self.first_site;
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &p)| (first + i as i64, p))
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Checks the exact zeros of an origin-started walk: no mass beyond
    /// `|n| > t` and none where `n + t` is odd.
    pub fn check_walk_invariants(&self) -> Result<()> {
        let t = self.time as i64;
        for (n, p) in self.iter() {
            if p != 0.0 && (n.abs() > t || (n + t).rem_euclid(2) == 1) {
                return Err(Error::InvalidDistribution(format!(
                    "mass {p} at forbidden site {n} at time {t}"
                )));
            }
        }
        Ok(())
    }
}

/// `P(N_t = n) = |a_n|^2 + |b_n|^2`.
pub fn distribution(state: &WalkState) -> PositionDistribution {
    let support = state.support();
    let masses = state.sites().map(|(_, pair)| pair.probability()).collect();
    PositionDistribution {
        time: state.time(),
        first_site: support.start,
        masses,
    }
}

/// Return probabilities `(t, P(N_t = 0))` for every even `t <= horizon`,
/// starting from the initial state's own time, from a single evolution.
pub fn return_probability_series(
    schedule: &CoinSchedule,
    initial: WalkState,
    horizon: usize,
) -> Result<Vec<(usize, f64)>> {
    if horizon < 2 {
        return Err(Error::HorizonTooSmall {
            got: horizon,
            min: 2,
        });
    }
    let start = initial.time();
    let mut series = Vec::with_capacity(horizon / 2 + 1);
    if start % 2 == 0 {
        series.push((start, initial.amplitude(0).probability()));
    }
    let steps = horizon.saturating_sub(start);
    evolve_observed(initial, schedule, steps, |s| {
        if s.time() % 2 == 0 {
            series.push((s.time(), s.amplitude(0).probability()));
        }
    })?;
    Ok(series)
}

/// Standard deviation of the position.
pub fn std_dev(dist: &PositionDistribution) -> f64 {
    let mean: f64 = dist.iter().map(|(n, p)| n as f64 * p).sum();
    let var: f64 = dist
        .iter()
        .map(|(n, p)| {
            let d = n as f64 - mean;
            d * d * p
        })
        .sum();
    var.max(0.0).sqrt()
}

/// Spread `(t, sigma(t))` at each requested time, from one evolution.
///
/// `times` must be non-decreasing.
pub fn spread_series(
    schedule: &CoinSchedule,
    initial: WalkState,
    times: &[usize],
) -> Result<Vec<(usize, f64)>> {
    let Some(&last) = times.last() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(times.len());
    let mut pending = times.iter().copied().peekable();
    while let Some(&t) = pending.peek() {
        if t > initial.time() {
            break;
        }
        out.push((t, std_dev(&distribution(&initial))));
        pending.next();
    }
    let steps = last.saturating_sub(initial.time());
    evolve_observed(initial, schedule, steps, |s| {
        while pending.peek() == Some(&s.time()) {
            out.push((s.time(), std_dev(&distribution(s))));
            pending.next();
        }
    })?;
    Ok(out)
}

/// Geometric time grid `2^lo, ..., 2^hi`, dropping times above `cap`.
pub fn geometric_times(lo_exp: u32, hi_exp: u32, cap: usize) -> Vec<usize> {
    (lo_exp..=hi_exp)
        .map(|e| 1usize << e)
        .filter(|&t| t <= cap)
        .collect()
}

/// Least-squares power law `sigma ~ t^exponent` fitted in log-log space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub sample_times: Vec<f64>,
}

/// Fits a line through `(ln t, ln sigma)`.
pub fn scaling_exponent(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    for (index, &(t, sigma)) in samples.iter().enumerate() {
        if !(t >= 1.0 && sigma > 0.0) || !t.is_finite() || !sigma.is_finite() {
            return Err(Error::NonPositiveSample { index, t, sigma });
        }
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let (exponent, intercept, r_squared) = linear_fit(&xs, &ys)?;
    Ok(ScalingFit {
        exponent,
        intercept,
        r_squared,
        sample_times: samples.iter().map(|s| s.0).collect(),
    })
}

/// Ordinary least squares `y = slope x + intercept`, with `r^2`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::TooFewSamples(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok((slope, intercept, r_squared))
}

/// `E[(N_t / t)^r]` for `r = 1..=r_max`.
pub fn rescaled_moments(dist: &PositionDistribution, r_max: u32) -> Result<Vec<f64>> {
    if dist.time() == 0 {
        return Err(Error::ZeroTime);
    }
    let t = dist.time() as f64;
    Ok((1..=r_max as i32)
        .map(|r| dist.iter().map(|(n, p)| (n as f64 / t).powi(r) * p).sum())
        .collect())
}

/// Kolmogorov-Smirnov distance between the empirical law of `N_t / t` and the
/// limit CDF.
///
/// The empirical CDF is a right-continuous step function, so the supremum over
/// all `x` is attained at an atom `x = n/t`, on one side of its jump. Both the
/// value before and after each jump are compared.
pub fn ks_distance(dist: &PositionDistribution, params: &LimitDensity) -> Result<f64> {
    if dist.time() == 0 {
        return Err(Error::ZeroTime);
    }
    let t = dist.time() as f64;
    let mut below = 0.0;
    let mut worst = 0.0_f64;
    for (n, p) in dist.iter().filter(|&(_, p)| p > 0.0) {
        let limit = cdf(n as f64 / t, params);
        let above = below + p;
        worst = worst.max((below - limit).abs()).max((above - limit).abs());
        below = above;
    }
    Ok(worst.min(1.0))
}

/// Mass at sites with `|n| > threshold_speed * t`.
pub fn mass_outside(dist: &PositionDistribution, threshold_speed: f64) -> f64 {
    let edge = threshold_speed * dist.time() as f64;
    dist.iter()
        .filter(|&(n, _)| (n as f64).abs() > edge)
        .map(|(_, p)| p)
        .sum()
}
