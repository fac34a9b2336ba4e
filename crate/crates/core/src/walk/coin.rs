use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat2;

/// Coin angle in radians, strictly inside (0, pi/2).
///
/// At the endpoints the walk either decouples into two independent shifts or
/// never moves, and the limit density collapses, so both are rejected.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CoinAngle(f64);

impl CoinAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > 0.0 && theta < FRAC_PI_2 {
            Ok(CoinAngle(theta))
        } else {
            Err(Error::InvalidAngle(theta))
        }
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// `(cos theta, sin theta)`, computed once per call.
    #[inline]
    pub fn cos_sin(self) -> (f64, f64) {
        let (s, c) = self.0.sin_cos();
        (c, s)
    }

    /// Support half-width of the limit density, `cos theta`.
    pub fn support(self) -> f64 {
        self.0.cos()
    }
}

impl TryFrom<f64> for CoinAngle {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        CoinAngle::new(theta)
    }
}

impl From<CoinAngle> for f64 {
    fn from(angle: CoinAngle) -> f64 {
        angle.0
    }
}

/// The coin read off the chirality recurrences: `[[cos, sin], [sin, -cos]]`.
///
/// It is a real reflection, so it is symmetric, orthogonal and its own inverse.
pub fn coin_matrix(theta: CoinAngle) -> Mat2 {
    let (c, s) = theta.cos_sin();
    Mat2::real(c, s, s, -c)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

    use super::*;

    #[test]
    fn rejects_degenerate_angles() {
        for bad in [0.0, FRAC_PI_2, -0.1, 2.0, f64::NAN, f64::INFINITY] {
            assert!(CoinAngle::new(bad).is_err(), "{bad} accepted");
        }
        assert!(CoinAngle::new(1e-9).is_ok());
    }

    #[test]
    fn hadamard_like_coin() {
        let m = coin_matrix(CoinAngle::new(FRAC_PI_4).unwrap());
        let want = Mat2::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        assert!(m.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn third_pi_coin() {
        let m = coin_matrix(CoinAngle::new(FRAC_PI_3).unwrap());
        let h = 3f64.sqrt() / 2.0;
        assert!(m.max_abs_diff(&Mat2::real(0.5, h, h, -0.5)) < 1e-15);
    }

    #[test]
    fn coin_is_an_involution() {
        for i in 1..50 {
            let theta = CoinAngle::new(i as f64 * FRAC_PI_2 / 50.0).unwrap();
            let m = coin_matrix(theta);
            assert!((m * m).max_abs_diff(&Mat2::IDENTITY) < 1e-15);
            assert_eq!(m.get(0, 1), m.get(1, 0));
        }
    }

    #[test]
    fn serde_rejects_out_of_range() {
        let err = serde_json::from_str::<CoinAngle>("1.7");
        assert!(err.is_err());
    }
}
