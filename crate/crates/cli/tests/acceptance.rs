//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fibwalk::diagnostics::{
    distribution, geometric_times, ks_distance, linear_fit, mass_outside, rescaled_moments,
    return_probability_series, scaling_exponent, spread_series, std_dev, PositionDistribution,
};
use fibwalk::fourier::{eigensystem, evolve_fourier, MomentumGrid};
use fibwalk::limit::{c0_from_mean, konno_density, moment, weighted_density, LimitDensity};
use fibwalk::quadrature::GaussLegendre;
use fibwalk::walk::{evolve, CoinAngle, CoinSchedule, WalkState};
use fibwalk_cli::output::read_simulation_csv;
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn angle(theta: f64) -> CoinAngle {
    CoinAngle::new(theta).unwrap()
}

fn symmetric_start() -> (Complex64, Complex64) {
    (
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    )
}

fn walk(schedule: &CoinSchedule, start: (Complex64, Complex64), steps: usize) -> WalkState {
    let init = WalkState::initial_with_room(start.0, start.1, steps).unwrap();
    evolve(init, schedule, steps).unwrap()
}

fn hadamard(steps: usize) -> CoinSchedule {
    CoinSchedule::constant(angle(FRAC_PI_4), steps)
}

fn fibonacci(steps: usize) -> CoinSchedule {
    CoinSchedule::fibonacci(angle(FRAC_PI_3), angle(FRAC_PI_6), steps)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    if elapsed <= Duration::from_secs(limit_secs) {
        Ok(())
    } else {
        Err(format!("runtime {elapsed:.2?} exceeds {limit_secs} s"))
    }
}

fn unitarity() -> Outcome {
    let start = Instant::now();
    let steps = 10_000;
    let mut worst: f64 = 0.0;
    for schedule in [hadamard(steps), fibonacci(steps)] {
        let state = walk(&schedule, symmetric_start(), steps);
        worst = worst.max((distribution(&state).total() - 1.0).abs());
    }
    within(start.elapsed(), 10)?;
    check(
        worst <= 1e-10,
        format!("max |sum p - 1| = {worst:.3e} in {:.2?}", start.elapsed()),
    )
}

fn position_fourier() -> Outcome {
    let steps = 256;
    let grid = MomentumGrid::for_steps(steps);
    let schedules = [
        hadamard(steps),
        CoinSchedule::alternating(angle(FRAC_PI_3), angle(FRAC_PI_6), steps),
        fibonacci(steps),
    ];
    let mut worst: f64 = 0.0;
    for schedule in &schedules {
        let (alpha, beta) = symmetric_start();
        let direct = distribution(&walk(schedule, (alpha, beta), steps));
        let spectral = evolve_fourier(alpha, beta, schedule, steps, &grid).unwrap();
        for n in -(steps as i64)..=steps as i64 {
            worst = worst.max((direct.get(n) - spectral.get(n)).abs());
        }
    }
    check(worst <= 1e-10, format!("sup difference {worst:.3e}"))
}

fn spectral_formulas() -> Outcome {
    let grid = MomentumGrid::new(1024).unwrap();
    let (mut eig_err, mut id_err) = (0.0_f64, 0.0_f64);
    for theta in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        let data = eigensystem(&grid, angle(theta)).map_err(|e| e.to_string())?;
        for p in &data.points {
            let w = (theta.cos() * p.k.sin()).acos();
            let plus = Complex64::from_polar(1.0, w);
            let expected = [plus, plus.conj()];
            for (got, want) in p.eigenvalues.iter().zip(expected) {
                eig_err = eig_err.max((got - want).norm());
            }
            let identity = p.w.sin().powi(2) + (p.k.sin() * theta.cos()).powi(2);
            id_err = id_err.max((identity - 1.0).abs());
        }
    }
    check(
        eig_err <= 1e-10 && id_err <= 1e-12,
        format!("eigenvalue error {eig_err:.3e}, identity error {id_err:.3e}"),
    )
}

fn hadamard_2000(start: (Complex64, Complex64)) -> PositionDistribution {
    distribution(&walk(&hadamard(2000), start, 2000))
}

fn moments() -> Outcome {
    let timer = Instant::now();
    let d = hadamard_2000(symmetric_start());
    let m = rescaled_moments(&d, 4).map_err(|e| e.to_string())?;
    within(timer.elapsed(), 5)?;
    let target = 1.0 - (1.0 - 0.5_f64).sqrt();
    // The target must agree with direct quadrature of the density.
    let a = FRAC_1_SQRT_2;
    let quad = GaussLegendre::new(8).composite(
        |u: f64| {
            let x = a * u.sin();
            x * x * konno_density(x, a).unwrap() * a * u.cos()
        },
        -std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
        4096,
    );
    if (quad - target).abs() > 1e-9 {
        return Err(format!("quadrature {quad} disagrees with target {target}"));
    }
    let rel2 = (m[1] - target).abs() / target;
    let limit4 = moment(4, &LimitDensity::symmetric(a).unwrap());
    let rel4 = (m[3] - limit4).abs() / limit4;
    check(
        rel2 <= 0.02 && rel4 <= 0.05,
        format!(
            "m2 {:.6} vs {target:.6} ({:.3}%), m4 {:.6} vs {limit4:.6} ({:.3}%)",
            m[1],
            rel2 * 100.0,
            m[3],
            rel4 * 100.0
        ),
    )
}

fn weak_convergence() -> Outcome {
    let a = FRAC_PI_4.cos();
    let sym = hadamard_2000(symmetric_start());
    let ks_sym = ks_distance(&sym, &LimitDensity::symmetric(a).unwrap()).unwrap();

    let asym = hadamard_2000((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    let mean = rescaled_moments(&asym, 1).unwrap()[0];
    let c0 = c0_from_mean(mean, a).map_err(|e| e.to_string())?;
    let ks_asym = ks_distance(&asym, &LimitDensity::new(a, c0).unwrap()).unwrap();
    check(
        ks_sym <= 0.06 && ks_asym <= 0.08,
        format!("KS symmetric {ks_sym:.4}, KS (1,0) {ks_asym:.4} with c0 = {c0:.4}"),
    )
}

fn support() -> Outcome {
    let d = hadamard_2000(symmetric_start());
    let mass = mass_outside(&d, FRAC_PI_4.cos() + 0.05);
    check(mass <= 1e-3, format!("mass outside {mass:.3e}"))
}

fn no_localization() -> Outcome {
    let init = || {
        let (a, b) = symmetric_start();
        WalkState::initial_with_room(a, b, 2048).unwrap()
    };
    let series = return_probability_series(&hadamard(2048), init(), 2048).unwrap();
    let (xs, ys): (Vec<f64>, Vec<f64>) = series
        .iter()
        .filter(|&&(t2, _)| (64..=2048).contains(&t2))
        .map(|&(t2, p)| (((t2 / 2) as f64).ln(), p.ln()))
        .unzip();
    let (slope, _, _) = linear_fit(&xs, &ys).unwrap();

    let fib = return_probability_series(&fibonacci(2048), init(), 2048).unwrap();
    let max_over = |lo: usize, hi: usize| {
        fib.iter()
            .filter(|&&(t, _)| (lo..=hi).contains(&t))
            .map(|&(_, p)| p)
            .fold(0.0, f64::max)
    };
    let (late, early) = (max_over(1024, 2048), max_over(4, 8));
    check(
        slope <= -0.8 && late < early,
        format!("Hadamard slope {slope:.4}; Fibonacci max {late:.4} late vs {early:.4} early"),
    )
}

fn spreading() -> Outcome {
    let timer = Instant::now();
    let times = geometric_times(6, 13, usize::MAX);
    let horizon = *times.last().unwrap();
    let fit = |schedule: CoinSchedule| {
        let (a, b) = symmetric_start();
        let init = WalkState::initial_with_room(a, b, horizon).unwrap();
        let samples = spread_series(&schedule, init, &times).unwrap();
        let points: Vec<(f64, f64)> = samples.iter().map(|&(t, s)| (t as f64, s)).collect();
        scaling_exponent(&points).unwrap()
    };
    let fib = fit(fibonacci(horizon));
    let control = fit(hadamard(horizon));
    within(timer.elapsed(), 60)?;
    check(
        fib.exponent > 0.5
            && fib.exponent < 1.0
            && fib.r_squared >= 0.95
            && (0.98..=1.02).contains(&control.exponent),
        format!(
            "Fibonacci c = {:.4} (r^2 {:.5}), constant c = {:.4}, {:.2?}",
            fib.exponent,
            fib.r_squared,
            control.exponent,
            timer.elapsed()
        ),
    )
}

fn density_engine() -> Outcome {
    let mut norm_err: f64 = 0.0;
    let mut moment_err: f64 = 0.0;
    let mut min_density = f64::INFINITY;
    for i in 1..=9 {
        let a = i as f64 / 10.0;
        norm_err = norm_err.max((moment(0, &LimitDensity::symmetric(a).unwrap()) - 1.0).abs());
        let bound = 1.0 / a;
        for c0 in [-bound, -1.0, -0.3, 0.0, 0.5, 1.0, bound] {
            if c0.abs() > bound {
                continue;
            }
            let params = LimitDensity::new(a, c0).unwrap();
            let expected = -c0 * (1.0 - (1.0 - a * a).sqrt());
            moment_err = moment_err.max((moment(1, &params) - expected).abs());
            for j in 0..=400 {
                let x = -a + 2.0 * a * j as f64 / 400.0;
                min_density = min_density.min(weighted_density(x, &params));
            }
        }
    }
    check(
        norm_err <= 1e-9 && moment_err <= 1e-8 && min_density >= 0.0,
        format!(
            "normalization {norm_err:.3e}, first moment {moment_err:.3e}, min density {min_density:.3e}"
        ),
    )
}

fn fibwalk(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fibwalk"))
        .args(args)
        .output()
        .expect("spawn fibwalk")
}

fn cli_contract() -> Outcome {
    let dir = std::env::temp_dir().join(format!("fibwalk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let csv = dir.join("walk.csv");
    let csv_str = csv.to_str().unwrap();
    let sim = [
        "simulate",
        "--steps",
        "300",
        "--checkpoints",
        "--output",
        csv_str,
    ];

    let first = fibwalk(&sim);
    let bytes1 = std::fs::read(&csv).map_err(|e| e.to_string())?;
    let second = fibwalk(&sim);
    let bytes2 = std::fs::read(&csv).map_err(|e| e.to_string())?;
    let json = ["compare", "--steps", "200"];
    let identical = bytes1 == bytes2 && fibwalk(&json).stdout == fibwalk(&json).stdout;

    let ingested = read_simulation_csv(&csv).map_err(|e| e.to_string())?;
    let mut round_trip: f64 = 0.0;
    for d in &ingested {
        let t = d.time();
        let direct = distribution(&walk(&fibonacci(t), symmetric_start(), t));
        round_trip = round_trip.max((std_dev(d) - std_dev(&direct)).abs());
    }

    let codes = [
        first.status.code(),
        second.status.code(),
        fibwalk(&["simulate", "--steps", "0"]).status.code(),
        fibwalk(&["simulate", "--steps", "5", "--theta1", "7"])
            .status
            .code(),
        fibwalk(&["simulate", "--steps", "5", "--output", &missing_dir(&dir)])
            .status
            .code(),
    ];
    let _ = std::fs::remove_dir_all(&dir);
    let expected = [Some(0), Some(0), Some(2), Some(2), Some(3)];
    check(
        identical && round_trip <= 1e-12 && codes == expected && ingested.len() >= 2,
        format!(
            "byte-identical {identical}, sigma round trip {round_trip:.3e} over {} snapshots, exit codes {codes:?}",
            ingested.len()
        ),
    )
}

fn missing_dir(base: &Path) -> String {
    base.join("no-such-dir")
        .join("out.csv")
        .to_string_lossy()
        .into_owned()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "unitarity over 10^4 steps", unitarity),
        (
            "AC2",
            "position and Fourier engines agree",
            position_fourier,
        ),
        ("AC3", "spectral formulas", spectral_formulas),
        ("AC4", "second and fourth moments at t = 2000", moments),
        ("AC5", "weak convergence (KS)", weak_convergence),
        ("AC6", "limit support", support),
        ("AC7", "no localization", no_localization),
        ("AC8", "sub-ballistic Fibonacci spreading", spreading),
        ("AC9", "limit density engine", density_engine),
        (
            "AC10",
            "CLI determinism, round trip, exit codes",
            cli_contract,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
