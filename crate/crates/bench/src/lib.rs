//! Shared fixtures for the kernel benchmarks.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_6};

use fibwalk::walk::{CoinAngle, CoinSchedule, WalkState};
use num_complex::Complex64;

/// The symmetric start `(1/sqrt2, i/sqrt2)` with room for `steps` steps.
pub fn symmetric_start(steps: usize) -> WalkState {
    WalkState::initial_with_room(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
        steps,
    )
    .expect("normalized")
}

/// Fibonacci schedule over the default angles `pi/3`, `pi/6`.
pub fn default_fibonacci(steps: usize) -> CoinSchedule {
    CoinSchedule::fibonacci(
        CoinAngle::new(FRAC_PI_3).expect("in range"),
        CoinAngle::new(FRAC_PI_6).expect("in range"),
        steps,
    )
}
