mod common;

use std::f64::consts::FRAC_PI_2;

use common::c;
use fibwalk::diagnostics::{
    distribution, ks_distance, rescaled_moments, scaling_exponent, PositionDistribution,
};
use fibwalk::fourier::{dispersion, transfer_matrix};
use fibwalk::limit::{weighted_density, LimitDensity};
use fibwalk::walk::{
    evolve, initial_state, CoinAngle, CoinSchedule, FibonacciOrdering, ScheduleKind,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn theta() -> impl Strategy<Value = CoinAngle> {
    (1e-3..FRAC_PI_2 - 1e-3).prop_map(|t| CoinAngle::new(t).unwrap())
}

fn amplitudes() -> impl Strategy<Value = (Complex64, Complex64)> {
    (
        0.0..FRAC_PI_2,
        0.0..std::f64::consts::TAU,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(mix, pa, pb)| {
            (
                Complex64::from_polar(mix.cos(), pa),
                Complex64::from_polar(mix.sin(), pb),
            )
        })
}

fn schedule_kind() -> impl Strategy<Value = ScheduleKind> {
    prop_oneof![
        theta().prop_map(|theta| ScheduleKind::Constant { theta }),
        (theta(), theta())
            .prop_map(|(theta1, theta2)| ScheduleKind::Alternating { theta1, theta2 }),
        (theta(), theta(), any::<bool>()).prop_map(|(theta1, theta2, rev)| {
            ScheduleKind::Fibonacci {
                theta1,
                theta2,
                ordering: if rev {
                    FibonacciOrdering::NewerFirst
                } else {
                    FibonacciOrdering::OlderFirst
                },
            }
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_unitary_with_exact_zeros(
        kind in schedule_kind(),
        (alpha, beta) in amplitudes(),
        steps in 1usize..400,
    ) {
        let schedule = CoinSchedule::new(kind, steps);
        let state = evolve(initial_state(alpha, beta).unwrap(), &schedule, steps).unwrap();
        let d = distribution(&state);
        prop_assert!((d.total() - 1.0).abs() <= 1e-10);
        prop_assert!(d.check_walk_invariants().is_ok());
        prop_assert!(state.check_invariants(1e-10).is_ok());
    }

    #[test]
    fn adjoint_evolution_recovers_initial_amplitudes(
        kind in schedule_kind(),
        (alpha, beta) in amplitudes(),
        steps in 1usize..100,
    ) {
        let schedule = CoinSchedule::new(kind, steps);
        let mut state = evolve(initial_state(alpha, beta).unwrap(), &schedule, steps).unwrap();
        for t in (0..steps).rev() {
            state.step_adjoint(schedule.angle_at(t)).unwrap();
        }
        prop_assert_eq!(state.time(), 0);
        let origin = state.amplitude(0);
        prop_assert!((origin.left - alpha).norm() <= 1e-12);
        prop_assert!((origin.right - beta).norm() <= 1e-12);
        for n in 1..=(steps as i64 + 1) {
            prop_assert!(state.amplitude(n).probability() <= 1e-24);
            prop_assert!(state.amplitude(-n).probability() <= 1e-24);
        }
    }

    #[test]
    fn degenerate_fibonacci_is_constant(theta in theta(), (alpha, beta) in amplitudes(), steps in 1usize..300) {
        let fib = CoinSchedule::fibonacci(theta, theta, steps);
        let constant = CoinSchedule::constant(theta, steps);
        let a = evolve(initial_state(alpha, beta).unwrap(), &fib, steps).unwrap();
        let b = evolve(initial_state(alpha, beta).unwrap(), &constant, steps).unwrap();
        prop_assert_eq!(distribution(&a), distribution(&b));
    }

    #[test]
    fn trace_and_dispersion_identities(k in -std::f64::consts::PI..std::f64::consts::PI, theta in theta()) {
        let m = transfer_matrix(k, theta);
        let cos_t = theta.radians().cos();
        prop_assert!((m.trace() - Complex64::new(2.0 * cos_t * k.sin(), 0.0)).norm() <= 1e-14);
        let w = dispersion(k, theta);
        prop_assert!((w.cos() - cos_t * k.sin()).abs() <= 1e-12);
        prop_assert!((w.sin().powi(2) + (k.sin() * cos_t).powi(2) - 1.0).abs() <= 1e-12);
        prop_assert!(m.unitarity_defect() <= 1e-14);
    }

    #[test]
    fn weighted_density_symmetry_and_sign(a in 0.01..0.99f64, frac in -1.0..=1.0f64, x in -1.0..1.0f64) {
        let c0 = frac / a;
        let p = LimitDensity::new(a, c0).unwrap();
        let q = LimitDensity::new(a, -c0).unwrap();
        prop_assert!(weighted_density(x, &p) >= 0.0);
        prop_assert_eq!(weighted_density(x, &p), weighted_density(-x, &q));
    }

    #[test]
    fn scaling_fit_ignores_constant_factors(
        exponent in 0.1..1.5f64,
        scale in 0.01..100.0f64,
        noise in proptest::collection::vec(-0.05..0.05f64, 8),
    ) {
        let base: Vec<(f64, f64)> = noise
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let t = 2f64.powi(i as i32 + 3);
                (t, t.powf(exponent) * e.exp())
            })
            .collect();
        let scaled: Vec<(f64, f64)> = base.iter().map(|&(t, s)| (t, s * scale)).collect();
        let f1 = scaling_exponent(&base).unwrap();
        let f2 = scaling_exponent(&scaled).unwrap();
        prop_assert!((f1.exponent - f2.exponent).abs() <= 1e-10);
        prop_assert!((f2.intercept - f1.intercept - scale.ln()).abs() <= 1e-10);
        prop_assert!((0.0..=1.0).contains(&f1.r_squared));
    }

    #[test]
    fn ks_ignores_zero_mass_sites(
        masses in proptest::collection::vec(0.01..1.0f64, 1..12),
        pads in proptest::collection::vec(-30i64..30, 0..10),
        a in 0.1..0.95f64,
    ) {
        let total: f64 = masses.iter().sum();
        let sites: Vec<(i64, f64)> = masses.iter().enumerate().map(|(i, m)| (3 * i as i64 - 15, m / total)).collect();
        let mut padded = sites.clone();
        for p in pads {
            if !padded.iter().any(|&(n, _)| n == p) {
                padded.push((p, 0.0));
            }
        }
        let params = LimitDensity::symmetric(a).unwrap();
        let d1 = ks_distance(&PositionDistribution::from_sites(30, sites).unwrap(), &params).unwrap();
        let d2 = ks_distance(&PositionDistribution::from_sites(30, padded).unwrap(), &params).unwrap();
        prop_assert_eq!(d1, d2);
        prop_assert!((0.0..=1.0).contains(&d1));
    }

    #[test]
    fn symmetric_start_has_zero_drift(theta in theta(), steps in 1usize..300) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let schedule = CoinSchedule::constant(theta, steps);
        let d = distribution(&evolve(initial_state(c(h, 0.0), c(0.0, h)).unwrap(), &schedule, steps).unwrap());
        let m = rescaled_moments(&d, 3).unwrap();
        prop_assert!(m[0].abs() <= 1e-10);
        prop_assert!(m[2].abs() <= 1e-10);
    }
}
