//! Weak-limit density of the rescaled position `N_t / t`.
//!
//! The Konno density
//!
//! ```text
//! f_K(x; a) = sqrt(1 - a^2) / (pi (1 - x^2) sqrt(a^2 - x^2)),   |x| < a
//! ```
//!
//! is carried with a linear weight, `f(x) = (1 - c0 x) f_K(x; a)`, where
//! `a = cos(theta)` and `c0` encodes the asymmetry set by the initial state.
//!
//! Integrals are evaluated after substituting `x = a sin(u)`, which cancels the
//! inverse-square-root endpoint singularities:
//!
//! ```text
//! f_K(x) dx = sqrt(1 - a^2) / (pi (1 - a^2 sin^2 u)) du,   u in (-pi/2, pi/2)
//! ```
//!
//! The transformed integrand is analytic, so a fixed composite Gauss-Legendre
//! rule reaches round-off.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Panels of the composite rule in the substituted variable.
pub const QUADRATURE_PANELS: usize = 2048;
const QUADRATURE_ORDER: usize = 4;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(QUADRATURE_ORDER))
}

fn check_support(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSupport(a))
    }
}

/// Parameters of the weighted limit density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitDensity {
    a: f64,
    c0: f64,
}

impl LimitDensity {
    /// Requires `0 < a < 1` and `|c0| <= 1/a`, which is exactly when the
    /// weight `1 - c0 x` stays non-negative on `(-a, a)`.
    pub fn new(a: f64, c0: f64) -> Result<Self> {
        check_support(a)?;
        let bound = 1.0 / a;
        if !c0.is_finite() || c0.abs() > bound {
            return Err(Error::InfeasibleAsymmetry { c0, bound });
        }
        Ok(LimitDensity { a, c0 })
    }

    /// Symmetric density for a coin angle.
    pub fn symmetric(a: f64) -> Result<Self> {
        Self::new(a, 0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// `(1 - c0 x) f_K(x; a)` times the Jacobian, as a function of `u`.
    fn substituted(&self, u: f64, power: i32) -> f64 {
        let s = u.sin();
        let x = self.a * s;
        let base = (1.0 - self.a * self.a).sqrt() / (PI * (1.0 - x * x));
        x.powi(power) * (1.0 - self.c0 * x) * base
    }
}

/// Konno density `f_K(x; a)`; zero outside the open interval `(-a, a)`.
pub fn konno_density(x: f64, a: f64) -> Result<f64> {
    check_support(a)?;
    Ok(konno_unchecked(x, a))
}

fn konno_unchecked(x: f64, a: f64) -> f64 {
    if x.abs() >= a {
        return 0.0;
    }
    (1.0 - a * a).sqrt() / (PI * (1.0 - x * x) * (a * a - x * x).sqrt())
}

/// Weighted density `(1 - c0 x) f_K(x; a)`.
pub fn weighted_density(x: f64, params: &LimitDensity) -> f64 {
    (1.0 - params.c0 * x) * konno_unchecked(x, params.a)
}

/// Limit CDF `int_{-a}^{x} f`, clamped to `[0, 1]`.
pub fn cdf(x: f64, params: &LimitDensity) -> f64 {
    let a = params.a;
    if x <= -a {
        return 0.0;
    }
    if x >= a {
        return 1.0;
    }
    let upper = (x / a).asin();
    let value = rule().composite(
        |u| params.substituted(u, 0),
        -FRAC_PI_2,
        upper,
        QUADRATURE_PANELS,
    );
    value.clamp(0.0, 1.0)
}

/// Limit moment `int x^r f(x) dx`.
pub fn moment(r: u32, params: &LimitDensity) -> f64 {
    let power = r as i32;
    rule().composite(
        |u| params.substituted(u, power),
        -FRAC_PI_2,
        FRAC_PI_2,
        QUADRATURE_PANELS,
    )
}

/// `int x^2 f_K(x; a) dx = 1 - sqrt(1 - a^2)`.
pub fn konno_second_moment(a: f64) -> f64 {
    1.0 - (1.0 - a * a).sqrt()
}

/// Asymmetry coefficient reproducing an observed mean of `N_t / t`.
///
/// The first moment of the weighted density is `-c0 (1 - sqrt(1 - a^2))`,
/// which is inverted here. Means that would need `|c0| > 1/a` are reported
/// as infeasible.
pub fn c0_from_mean(empirical_mean: f64, a: f64) -> Result<f64> {
    check_support(a)?;
    let c0 = -empirical_mean / konno_second_moment(a);
    let bound = 1.0 / a;
    if !c0.is_finite() || c0.abs() > bound {
        return Err(Error::InfeasibleAsymmetry { c0, bound });
    }
    Ok(c0)
}
