//! Coined discrete-time quantum walks on the line with time-dependent coins.
//!
//! The crate covers the Fibonacci quantum walk, where the coin angle follows
//! the Fibonacci word over two angles, alongside constant and alternating
//! schedules:
//!
//! - [`walk`]: chiral amplitudes on the lattice and their step-by-step evolution.
//! - [`fourier`]: the momentum-space transfer matrix, its spectrum, dispersion
//!   and group velocities, and exact momentum-space evolution.
//! - [`limit`]: the weighted Konno density of `N_t / t`, its CDF and moments.
//! - [`diagnostics`]: distributions, return probability, spread and scaling
//!   exponents, rescaled moments and Kolmogorov-Smirnov distances.
//!
//! ```
//! use fibwalk::prelude::*;
//! use num_complex::Complex64;
//!
//! let theta = CoinAngle::new(std::f64::consts::FRAC_PI_4).unwrap();
//! let schedule = CoinSchedule::constant(theta, 2);
//! let start = initial_state(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
//! let end = evolve(start, &schedule, 2).unwrap();
//! let p = distribution(&end);
//! assert!((p.get(0) - 0.5).abs() < 1e-15);
//! ```

pub mod diagnostics;
pub mod error;
pub mod fourier;
pub mod limit;
pub mod linalg;
pub mod quadrature;
pub mod walk;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::diagnostics::{
        distribution, geometric_times, ks_distance, mass_outside, rescaled_moments,
        return_probability_series, scaling_exponent, spread_series, std_dev, PositionDistribution,
        ScalingFit,
    };
    pub use crate::fourier::{
        dispersion, eigensystem, evolve_fourier, fibonacci_transfer, group_velocity,
        transfer_matrix, MomentumGrid, SpectralData,
    };
    pub use crate::limit::{
        c0_from_mean, cdf, konno_density, moment, weighted_density, LimitDensity,
    };
    pub use crate::walk::{
        coin_matrix, evolve, fibonacci_word, initial_state, step, CoinAngle, CoinSchedule,
        FibonacciOrdering, ScheduleKind, WalkState,
    };
    pub use crate::{Error, Result};
}
