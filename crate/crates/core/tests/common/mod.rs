//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Walk evolved straight from the two recurrences on a sparse map, with the
/// angle sequence given in radians.
pub fn reference_walk(alpha: Complex64, beta: Complex64, angles: &[f64]) -> BTreeMap<i64, f64> {
    let mut amps: BTreeMap<i64, (Complex64, Complex64)> = BTreeMap::new();
    amps.insert(0, (alpha, beta));
    for &theta in angles {
        let (cs, sn) = (theta.cos(), theta.sin());
        let lo = amps.keys().next().unwrap() - 1;
        let hi = amps.keys().last().unwrap() + 1;
        let get = |n: i64| amps.get(&n).copied().unwrap_or_default();
        let mut next = BTreeMap::new();
        for n in lo..=hi {
            let (a_up, b_up) = get(n + 1);
            let (a_dn, b_dn) = get(n - 1);
            next.insert(n, (a_up * cs + b_up * sn, a_dn * sn - b_dn * cs));
        }
        amps = next;
    }
    amps.into_iter()
        .map(|(n, (a, b))| (n, a.norm_sqr() + b.norm_sqr()))
        .collect()
}

/// Adaptive Simpson quadrature on `[lo, hi]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(lo), f(hi));
    let (m, fm, whole) = simpson(f, lo, fa, hi, fb);
    recurse(f, lo, fa, hi, fb, m, fm, whole, tol, 50)
}

/// Weighted Konno integrand `x^r (1 - c0 x) f_K` after `x = a sin u`.
pub fn substituted_integrand(a: f64, c0: f64, r: i32) -> impl Fn(f64) -> f64 {
    move |u: f64| {
        let x = a * u.sin();
        x.powi(r) * (1.0 - c0 * x) * (1.0 - a * a).sqrt() / (PI * (1.0 - x * x))
    }
}

/// Adaptive reference for the limit CDF.
pub fn reference_cdf(x: f64, a: f64, c0: f64) -> f64 {
    if x <= -a {
        return 0.0;
    }
    if x >= a {
        return 1.0;
    }
    let f = substituted_integrand(a, c0, 0);
    adaptive_simpson(&f, -FRAC_PI_2, (x / a).asin(), 1e-13)
}

/// Closed-form limit CDF, from the antiderivatives
/// `int du / (1 - a^2 sin^2 u) = arctan(s tan u) / s` and
/// `int a sin u du / (1 - a^2 sin^2 u) = -arctan(a cos u / s) / s`, `s = sqrt(1 - a^2)`.
pub fn closed_form_cdf(x: f64, a: f64, c0: f64) -> f64 {
    if x <= -a {
        return 0.0;
    }
    if x >= a {
        return 1.0;
    }
    let s = (1.0 - a * a).sqrt();
    let u = (x / a).asin();
    0.5 + (s * u.tan()).atan() / PI + c0 * (a * u.cos() / s).atan() / PI
}

/// Adaptive reference for the limit moments.
pub fn reference_moment(r: i32, a: f64, c0: f64) -> f64 {
    let f = substituted_integrand(a, c0, r);
    adaptive_simpson(&f, -FRAC_PI_2, FRAC_PI_2, 1e-13)
}
