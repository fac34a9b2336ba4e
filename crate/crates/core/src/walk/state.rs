use std::ops::Range;

use num_complex::Complex64;

use super::coin::CoinAngle;
use super::schedule::CoinSchedule;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Normalization tolerance for initial amplitudes.
pub const INITIAL_NORM_TOL: f64 = 1e-12;

/// Chiral amplitudes at one site: `left` is the upper component `a_n`,
/// `right` the lower component `b_n`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChiralPair {
    pub left: Complex64,
    pub right: Complex64,
}

impl ChiralPair {
    pub const ZERO: ChiralPair = ChiralPair {
        left: ZERO,
        right: ZERO,
    };

    pub fn new(left: Complex64, right: Complex64) -> Self {
        ChiralPair { left, right }
    }

    #[inline]
    pub fn probability(&self) -> f64 {
        self.left.norm_sqr() + self.right.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }
}

/// Walker state on a finite window of the integer line.
///
/// Array index `i` holds lattice site `n = i - origin_offset`. Only the index
/// range `occupied` can hold non-zero amplitudes; everything else is an exact
/// zero, so a step costs time proportional to the current support.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    time: usize,
    origin_offset: usize,
    amplitudes: Vec<ChiralPair>,
    occupied: Range<usize>,
}

impl WalkState {
    /// State at time 0 with amplitude `(alpha, beta)` at the origin.
    pub fn initial(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::initial_with_room(alpha, beta, 0)
    }

    /// As [`WalkState::initial`], with the window preallocated for `steps`
    /// steps so evolution never reallocates.
    pub fn initial_with_room(alpha: Complex64, beta: Complex64, steps: usize) -> Result<Self> {
        let pair = ChiralPair::new(alpha, beta);
        if !pair.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = pair.probability();
        if (norm - 1.0).abs() > INITIAL_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        let half = steps + 1;
        let mut amplitudes = vec![ChiralPair::ZERO; 2 * half + 1];
        amplitudes[half] = pair;
        Ok(WalkState {
            time: 0,
            origin_offset: half,
            amplitudes,
            occupied: half..half + 1,
        })
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Array index of lattice site 0.
    pub fn origin_offset(&self) -> usize {
        self.origin_offset
    }

    /// Lattice sites covered by the storage window.
    pub fn window(&self) -> Range<i64> {
        let lo = -(self.origin_offset as i64);
        lo..lo + self.amplitudes.len() as i64
    }

    /// Lattice sites that may carry non-zero amplitude.
    pub fn support(&self) -> Range<i64> {
        let o = self.origin_offset as i64;
        self.occupied.start as i64 - o..self.occupied.end as i64 - o
    }

    /// Amplitudes at site `n`, zero outside the window.
    pub fn amplitude(&self, n: i64) -> ChiralPair {
        let idx = n + self.origin_offset as i64;
        if idx < 0 {
            return ChiralPair::ZERO;
        }
        self.amplitudes
            .get(idx as usize)
            .copied()
            .unwrap_or(ChiralPair::ZERO)
    }

    /// `(site, amplitudes)` over the occupied range.
    pub fn sites(&self) -> impl Iterator<Item = (i64, ChiralPair)> + '_ {
        let o = self.origin_offset as i64;
        self.occupied
            .clone()
            .map(move |i| (i as i64 - o, self.amplitudes[i]))
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes[self.occupied.clone()]
            .iter()
            .map(ChiralPair::probability)
            .sum()
    }

    /// Makes room for `steps` more steps without reallocation.
    pub fn reserve_steps(&mut self, steps: usize) {
        let need_lo = steps + 1;
        let need_hi = steps + 1;
        let have_lo = self.occupied.start;
        let have_hi = self.amplitudes.len() - self.occupied.end;
        if have_lo >= need_lo && have_hi >= need_hi {
            return;
        }
        let pad_lo = need_lo.max(have_lo);
        let pad_hi = need_hi.max(have_hi);
        let live = self.occupied.len();
        let mut grown = vec![ChiralPair::ZERO; pad_lo + live + pad_hi];
        grown[pad_lo..pad_lo + live].copy_from_slice(&self.amplitudes[self.occupied.clone()]);
        self.origin_offset = self.origin_offset + pad_lo - self.occupied.start;
        self.amplitudes = grown;
        self.occupied = pad_lo..pad_lo + live;
    }

    fn ensure_margin(&mut self) {
        if self.occupied.start < 2 || self.occupied.end + 2 > self.amplitudes.len() {
            // Geometric growth keeps repeated single steps amortized O(1) in allocation.
            let extra = self.occupied.len().max(16);
            self.reserve_steps(extra);
        }
    }

    /// One walk step with coin angle `theta`:
    ///
    /// ```text
    /// a_n(t+1) = a_{n+1}(t) cos + b_{n+1}(t) sin
    /// b_n(t+1) = a_{n-1}(t) sin - b_{n-1}(t) cos
    /// ```
    pub fn step(&mut self, theta: CoinAngle) {
        self.ensure_margin();
        let (c, s) = theta.cos_sin();
        let lo = self.occupied.start - 1;
        let hi = self.occupied.end + 1;
        let amps = &mut self.amplitudes;
        // In-place sweep: `prev` holds the pre-step pair at i - 1, while
        // amps[i + 1] has not been overwritten yet.
        let mut prev = ChiralPair::ZERO;
        for i in lo..hi {
            let old = amps[i];
            let next = amps[i + 1];
            amps[i] = ChiralPair {
                left: next.left * c + next.right * s,
                right: prev.left * s - prev.right * c,
            };
            prev = old;
        }
        self.occupied = lo..hi;
        self.time += 1;
    }

    /// Inverse of [`WalkState::step`] for the same angle.
    ///
    /// The coin is its own inverse, so the previous amplitudes are the coin
    /// applied to `(a_{n-1}, b_{n+1})` of the current state.
    pub fn step_adjoint(&mut self, theta: CoinAngle) -> Result<()> {
        if self.time == 0 {
            return Err(Error::TimeUnderflow);
        }
        self.ensure_margin();
        let (c, s) = theta.cos_sin();
        let lo = self.occupied.start - 1;
        let hi = self.occupied.end + 1;
        let amps = &mut self.amplitudes;
        let mut prev = ChiralPair::ZERO;
        for i in lo..hi {
            let old = amps[i];
            let next = amps[i + 1];
            amps[i] = ChiralPair {
                left: prev.left * c + next.right * s,
                right: prev.left * s - next.right * c,
            };
            prev = old;
        }
        self.occupied = lo..hi;
        self.time -= 1;
        Ok(())
    }

    /// Checks normalization, finiteness, and for origin-started states the
    /// support and parity zeros.
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        if !self.amplitudes.iter().all(ChiralPair::is_finite) {
            return Err(Error::NonFinite);
        }
        let total = self.total_probability();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidDistribution(format!(
                "total probability {total} differs from 1"
            )));
        }
        let t = self.time as i64;
        for (n, pair) in self.sites() {
            let forbidden = n.abs() > t || (n + t).rem_euclid(2) == 1;
            if forbidden && pair != ChiralPair::ZERO {
                return Err(Error::InvalidDistribution(format!(
                    "non-zero amplitude at forbidden site {n} at time {t}"
                )));
            }
        }
        Ok(())
    }
}

/// State at time 0 concentrated at the origin.
pub fn initial_state(alpha: Complex64, beta: Complex64) -> Result<WalkState> {
    WalkState::initial(alpha, beta)
}

/// One step under `theta`, returning the new state.
pub fn step(mut state: WalkState, theta: CoinAngle) -> WalkState {
    state.step(theta);
    state
}

/// Applies `steps` steps, using the schedule angle for each absolute time.
///
/// The schedule is indexed by the state's own clock, so evolving a state at
/// time `t` continues from `schedule[t]`.
pub fn evolve(initial: WalkState, schedule: &CoinSchedule, steps: usize) -> Result<WalkState> {
    evolve_observed(initial, schedule, steps, |_| {})
}

/// As [`evolve`], calling `observe` after every step.
pub fn evolve_observed<F>(
    mut state: WalkState,
    schedule: &CoinSchedule,
    steps: usize,
    mut observe: F,
) -> Result<WalkState>
where
    F: FnMut(&WalkState),
{
    let start = state.time();
    schedule.ensure_covers(start + steps)?;
    state.reserve_steps(steps);
    for t in start..start + steps {
        state.step(schedule.angle_at(t));
        observe(&state);
    }
    Ok(state)
}
