//! Coin-angle schedules: constant, alternating and the Fibonacci word.
//!
//! A schedule is materialized as a word over the letters `1` and `2`, where
//! letter `1` selects the first angle and `2` the second. Step `t` (counting
//! from zero) uses the angle named by `word[t]`.

use serde::{Deserialize, Serialize};

use super::coin::CoinAngle;
use crate::error::{Error, Result};

/// How Fibonacci blocks are concatenated in time.
///
/// With the operator rule `U(k+1) = U(k) U(k-1)`, the factor `U(k-1)` acts
/// first, so block `s(k+1)` is `s(k-1)` followed by `s(k)`. That is the
/// default. The other reading puts `s(k)` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibonacciOrdering {
    #[default]
    OlderFirst,
    NewerFirst,
}

/// The family of coin schedule, independent of horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleKind {
    Constant {
        theta: CoinAngle,
    },
    Alternating {
        theta1: CoinAngle,
        theta2: CoinAngle,
    },
    Fibonacci {
        theta1: CoinAngle,
        theta2: CoinAngle,
        #[serde(default)]
        ordering: FibonacciOrdering,
    },
}

impl ScheduleKind {
    /// Angle selected by a word letter.
    #[inline]
    pub fn angle(&self, letter: u8) -> CoinAngle {
        match *self {
            ScheduleKind::Constant { theta } => theta,
            ScheduleKind::Alternating { theta1, theta2 }
            | ScheduleKind::Fibonacci { theta1, theta2, .. } => {
                if letter == 1 {
                    theta1
                } else {
                    theta2
                }
            }
        }
    }

    /// Word prefix of the given length.
    pub fn word(&self, horizon: usize) -> Vec<u8> {
        match *self {
            ScheduleKind::Constant { .. } => vec![1; horizon],
            ScheduleKind::Alternating { .. } => (0..horizon).map(|t| 1 + (t % 2) as u8).collect(),
            ScheduleKind::Fibonacci { ordering, .. } => fibonacci_prefix(horizon, ordering),
        }
    }
}

/// A schedule kind together with its word, materialized out to a horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinSchedule {
    kind: ScheduleKind,
    word: Vec<u8>,
}

impl CoinSchedule {
    pub fn new(kind: ScheduleKind, horizon: usize) -> Self {
        CoinSchedule {
            kind,
            word: kind.word(horizon),
        }
    }

    pub fn constant(theta: CoinAngle, horizon: usize) -> Self {
        Self::new(ScheduleKind::Constant { theta }, horizon)
    }

    pub fn alternating(theta1: CoinAngle, theta2: CoinAngle, horizon: usize) -> Self {
        Self::new(ScheduleKind::Alternating { theta1, theta2 }, horizon)
    }

    pub fn fibonacci(theta1: CoinAngle, theta2: CoinAngle, horizon: usize) -> Self {
        Self::fibonacci_ordered(theta1, theta2, FibonacciOrdering::default(), horizon)
    }

    pub fn fibonacci_ordered(
        theta1: CoinAngle,
        theta2: CoinAngle,
        ordering: FibonacciOrdering,
        horizon: usize,
    ) -> Self {
        Self::new(
            ScheduleKind::Fibonacci {
                theta1,
                theta2,
                ordering,
            },
            horizon,
        )
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Number of steps the materialized word covers.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Coin angle for step `t` (zero-based). Panics past the horizon.
    #[inline]
    pub fn angle_at(&self, t: usize) -> CoinAngle {
        self.kind.angle(self.word[t])
    }

    pub fn ensure_covers(&self, steps: usize) -> Result<()> {
        if self.word.len() < steps {
            Err(Error::ScheduleTooShort {
                len: self.word.len(),
                steps,
            })
        } else {
            Ok(())
        }
    }
}

/// Prefix of the Fibonacci coin word with the default block ordering.
///
/// Blocks start from `s1 = "1"`, `s2 = "2"` and grow by
/// `s(k+1) = s(k-1) ++ s(k)`, so `|s(k)|` is the k-th Fibonacci number.
/// Under this rule each odd block is a prefix of the next odd block, which
/// fixes the infinite word `1 2 2 1 2 1 2 2 1 ...`; the returned word is its
/// prefix of length `horizon`.
pub fn fibonacci_word(horizon: usize) -> Result<Vec<u8>> {
    if horizon == 0 {
        return Err(Error::HorizonTooSmall { got: 0, min: 1 });
    }
    Ok(fibonacci_prefix(horizon, FibonacciOrdering::OlderFirst))
}

/// Block `s(k)` (1-based index) under the given ordering.
pub fn fibonacci_block(index: usize, ordering: FibonacciOrdering) -> Vec<u8> {
    assert!(index >= 1, "Fibonacci blocks are indexed from 1");
    let mut older = vec![1u8];
    let mut newer = vec![2u8];
    if index == 1 {
        return older;
    }
    for _ in 2..index {
        let next = concat(&older, &newer, ordering);
        older = std::mem::replace(&mut newer, next);
    }
    newer
}

fn concat(older: &[u8], newer: &[u8], ordering: FibonacciOrdering) -> Vec<u8> {
    let (head, tail) = match ordering {
        FibonacciOrdering::OlderFirst => (older, newer),
        FibonacciOrdering::NewerFirst => (newer, older),
    };
    let mut out = Vec::with_capacity(head.len() + tail.len());
    out.extend_from_slice(head);
    out.extend_from_slice(tail);
    out
}

fn fibonacci_prefix(horizon: usize, ordering: FibonacciOrdering) -> Vec<u8> {
    if horizon == 0 {
        return Vec::new();
    }
    let mut older = vec![1u8];
    let mut newer = vec![2u8];
    // index of `newer`
    let mut index = 2usize;
    // OlderFirst: odd blocks nest as prefixes. NewerFirst: every block from s2 on does.
    let settled = |index: usize, len: usize| match ordering {
        FibonacciOrdering::OlderFirst => index % 2 == 1 && len >= horizon,
        FibonacciOrdering::NewerFirst => len >= horizon,
    };
    if ordering == FibonacciOrdering::OlderFirst && horizon == 1 {
        return older;
    }
    while !settled(index, newer.len()) {
        let next = concat(&older, &newer, ordering);
        older = std::mem::replace(&mut newer, next);
        index += 1;
    }
    newer.truncate(horizon);
    newer
}

/// Renders a word as a string of `1`s and `2`s.
pub fn word_string(word: &[u8]) -> String {
    word.iter().map(|&l| char::from(b'0' + l)).collect()
}
