//! Position-space walk: coin, schedule and state evolution.

mod coin;
mod schedule;
mod state;

pub use coin::{coin_matrix, CoinAngle};
pub use schedule::{
    fibonacci_block, fibonacci_word, word_string, CoinSchedule, FibonacciOrdering, ScheduleKind,
};
pub use state::{
    evolve, evolve_observed, initial_state, step, ChiralPair, WalkState, INITIAL_NORM_TOL,
};
