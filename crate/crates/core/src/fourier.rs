//! Momentum-space analysis of the walk.
//!
//! Momentum amplitudes are `psi_hat(k) = sum_n e^{+ikn} psi(n)` and the
//! inverse is `psi(n) = (1/2pi) int e^{-ikn} psi_hat(k) dk`. With this sign,
//! one step of the position recurrences becomes multiplication by
//!
//! ```text
//! M(k) = [[ i e^{-ik} cos,  i e^{-ik} sin ],
//!         [ i e^{+ik} sin, -i e^{+ik} cos ]]
//! ```
//!
//! up to the global phase `i` per step, which drops out of every probability.
//! `M(k)` has unit determinant and trace `2 cos(theta) sin(k)`, so its
//! eigenvalues are `e^{+-iw(k)}` with `cos w(k) = cos(theta) sin(k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::diagnostics::PositionDistribution;
use crate::error::{Error, Result};
use crate::linalg::{norm2, Mat2};
use crate::walk::{fibonacci_word, CoinAngle, CoinSchedule};

/// Residual bound for numerically computed eigenpairs.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Uniform grid `k_j = -pi + 2 pi j / N`, `j = 0..N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MomentumGrid {
    size: usize,
}

impl MomentumGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::GridTooSmall { size, min: 2 });
        }
        Ok(MomentumGrid { size })
    }

    /// Smallest grid that reconstructs a walk of `steps` steps exactly.
    pub fn for_steps(steps: usize) -> Self {
        MomentumGrid {
            size: min_grid_size(steps),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        -PI + 2.0 * PI * j as f64 / self.size as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size).map(move |j| self.node(j))
    }
}

/// A walk of `steps` steps has support in `[-steps, steps]`; this many nodes
/// keep the discrete inverse transform free of aliasing.
pub fn min_grid_size(steps: usize) -> usize {
    2 * steps + 2
}

/// Transfer matrix advancing momentum amplitudes by one step.
pub fn transfer_matrix(k: f64, theta: CoinAngle) -> Mat2 {
    let (c, s) = theta.cos_sin();
    let down = I * Complex64::from_polar(1.0, -k);
    let up = I * Complex64::from_polar(1.0, k);
    Mat2::new(down * c, down * s, up * s, -up * c)
}

/// Dispersion angle `w(k) = arccos(cos(theta) sin(k))`, in `[0, pi]`.
///
/// On this branch `sin w(k) = sqrt(1 - sin^2 k cos^2 theta) >= sin theta`.
pub fn dispersion(k: f64, theta: CoinAngle) -> f64 {
    (theta.support() * k.sin()).clamp(-1.0, 1.0).acos()
}

/// Group velocities `h_j = (i d/dk lambda_j) / lambda_j` of the two branches
/// `lambda_1 = e^{iw}`, `lambda_2 = e^{-iw}`.
///
/// `h_1 = -w'(k)` and `h_2 = w'(k)` with `w'(k) = -cos(theta) cos(k) / sin w(k)`.
pub fn group_velocity(k: f64, theta: CoinAngle) -> [f64; 2] {
    let a = theta.support();
    let sin_w = (1.0 - (a * k.sin()).powi(2)).sqrt();
    let dw = -a * k.cos() / sin_w;
    [-dw, dw]
}

/// Spectral data at one grid node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralPoint {
    pub k: f64,
    /// Eigenphase of the first branch, in `[0, pi]`.
    pub w: f64,
    /// `(e^{iw}, e^{-iw})` as computed from the matrix.
    pub eigenvalues: [Complex64; 2],
    /// Unit eigenvectors; the first component of each is real and non-negative.
    pub eigenvectors: [[Complex64; 2]; 2],
    pub group_velocities: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralData {
    pub theta: f64,
    pub grid_size: usize,
    pub points: Vec<SpectralPoint>,
}

/// Eigenvalues and unit eigenvectors of a general complex 2x2 matrix, as
/// `(values, vectors)`; eigenvalues come from the characteristic polynomial.
pub fn eigen2(m: &Mat2) -> ([Complex64; 2], [[Complex64; 2]; 2]) {
    let half_tr = m.trace() * 0.5;
    let disc = (half_tr * half_tr - m.det()).sqrt();
    let values = [half_tr + disc, half_tr - disc];
    let vectors = values.map(|lambda| eigenvector(m, lambda));
    (values, vectors)
}

fn eigenvector(m: &Mat2, lambda: Complex64) -> [Complex64; 2] {
    let [[p, q], [r, s]] = m.0;
    // Either row of (M - lambda) yields a null vector; take the better conditioned one.
    let from_top = [q, lambda - p];
    let from_bottom = [lambda - s, r];
    let v = if norm2(from_top) >= norm2(from_bottom) {
        from_top
    } else {
        from_bottom
    };
    fix_phase(v)
}

/// Unit-normalizes `v` and rotates its phase so the first component is real
/// and non-negative.
fn fix_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let norm = norm2(v);
    let lead = if v[0].norm() > f64::EPSILON * norm {
        v[0]
    } else {
        v[1]
    };
    let rot = lead.conj() / (lead.norm() * norm);
    [v[0] * rot, v[1] * rot]
}

/// Numerical eigensystem of `M(k)` on every grid node.
pub fn eigensystem(grid: &MomentumGrid, theta: CoinAngle) -> Result<SpectralData> {
    let points = grid
        .nodes()
        .enumerate()
        .map(|(node, k)| {
            let m = transfer_matrix(k, theta);
            let (mut values, mut vectors) = eigen2(&m);
            if values[0].im < values[1].im {
                values.swap(0, 1);
                vectors.swap(0, 1);
            }
            let residual = (0..2)
                .map(|j| {
                    let mv = m.apply(vectors[j]);
                    norm2([
                        mv[0] - values[j] * vectors[j][0],
                        mv[1] - values[j] * vectors[j][1],
                    ])
                })
                .fold(0.0, f64::max);
            if residual.is_nan() || residual > EIGEN_RESIDUAL_TOL {
                return Err(Error::EigenResidual { node, residual });
            }
            Ok(SpectralPoint {
                k,
                w: values[0].arg().clamp(0.0, PI),
                eigenvalues: values,
                eigenvectors: vectors,
                group_velocities: group_velocity(k, theta),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData {
        theta: theta.radians(),
        grid_size: grid.size(),
        points,
    })
}

/// Time-ordered product `M(k, theta_{s-1}) ... M(k, theta_0)` over the first
/// `steps` letters of the schedule.
pub fn schedule_transfer(k: f64, schedule: &CoinSchedule, steps: usize) -> Result<Mat2> {
    schedule.ensure_covers(steps)?;
    Ok((0..steps).fold(Mat2::IDENTITY, |acc, t| {
        transfer_matrix(k, schedule.angle_at(t)) * acc
    }))
}

/// Transfer matrix of the first `steps` steps of the Fibonacci walk with the
/// default block ordering.
pub fn fibonacci_transfer(
    k: f64,
    theta1: CoinAngle,
    theta2: CoinAngle,
    steps: usize,
) -> Result<Mat2> {
    let word = fibonacci_word(steps)?;
    let m = [transfer_matrix(k, theta1), transfer_matrix(k, theta2)];
    Ok(word
        .iter()
        .fold(Mat2::IDENTITY, |acc, &l| m[(l - 1) as usize] * acc))
}

/// Evolves the origin-started state `(alpha, beta)` in momentum space and
/// returns the position distribution at time `steps`.
///
/// Each node is propagated independently; one FFT per chirality performs the
/// inverse transform, which is exact because the state is band-limited to
/// `[-steps, steps]`.
pub fn evolve_fourier(
    alpha: Complex64,
    beta: Complex64,
    schedule: &CoinSchedule,
    steps: usize,
    grid: &MomentumGrid,
) -> Result<PositionDistribution> {
    let n = grid.size();
    let min = min_grid_size(steps);
    if n < min {
        return Err(Error::GridTooSmall { size: n, min });
    }
    schedule.ensure_covers(steps)?;
    let coins: Vec<(f64, f64)> = (0..steps).map(|t| schedule.angle_at(t).cos_sin()).collect();

    let mut upper = Vec::with_capacity(n);
    let mut lower = Vec::with_capacity(n);
    for k in grid.nodes() {
        let down = I * Complex64::from_polar(1.0, -k);
        let up = I * Complex64::from_polar(1.0, k);
        let (mut f, mut g) = (alpha, beta);
        for &(c, s) in &coins {
            (f, g) = (down * (f * c + g * s), up * (f * s - g * c));
        }
        upper.push(f);
        lower.push(g);
    }

    // psi(n) = (1/N) sum_j e^{-i k_j n} psi_hat_j = ((-1)^n / N) FFT[psi_hat][n mod N]
    let fft = FftPlanner::new().plan_fft_forward(n);
    fft.process(&mut upper);
    fft.process(&mut lower);
    let scale = 1.0 / (n as f64 * n as f64);
    let t = steps as i64;
    let masses = (-t..=t)
        .map(|site| {
            let idx = site.rem_euclid(n as i64) as usize;
            (upper[idx].norm_sqr() + lower[idx].norm_sqr()) * scale
        })
        .collect();
    PositionDistribution::from_dense(steps, -t, masses)
}
