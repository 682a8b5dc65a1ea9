//! Milnor's Lobachevsky function `Λ(θ) = -∫₀^θ ln|2 sin t| dt` and its derivative.
//!
//! `Λ` is odd, π-periodic and vanishes on `(π/2)ℤ`. Evaluation reduces the
//! argument to `[0, π/4]`, where the Clausen series converges fast.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use thiserror::Error;

/// Distance to `πℤ` below which the derivative is reported as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

const SERIES_TERMS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LobachevskyError {
    #[error("Lobachevsky derivative is singular at {0} (a multiple of pi)")]
    SingularArgument(f64),
    #[error("non-finite argument {0}")]
    NonFinite(f64),
    #[error("quadrature tolerance {0} not in (0, 1e-6]")]
    InvalidTolerance(f64),
}

/// `ζ(2n)` for `n = 1..=SERIES_TERMS`, by Euler-Maclaurin summation.
fn zeta_even() -> &'static [f64; SERIES_TERMS] {
    static TABLE: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; SERIES_TERMS];
        for (idx, slot) in out.iter_mut().enumerate() {
            *slot = zeta_euler_maclaurin(2.0 * (idx as f64 + 1.0));
        }
        out
    })
}

fn zeta_euler_maclaurin(s: f64) -> f64 {
    const N: usize = 16;
    // B_2, B_4, ..., B_12 divided by (2j)!
    const BERNOULLI_OVER_FACT: [f64; 6] = [
        1.0 / 6.0 / 2.0,
        -1.0 / 30.0 / 24.0,
        1.0 / 42.0 / 720.0,
        -1.0 / 30.0 / 40320.0,
        5.0 / 66.0 / 3628800.0,
        -691.0 / 2730.0 / 479001600.0,
    ];
    let n = N as f64;
    // Sum the small terms first.
    let mut sum = 0.0;
    for k in (1..N).rev() {
        sum += (k as f64).powf(-s);
    }
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (j, coef) in BERNOULLI_OVER_FACT.iter().enumerate() {
        sum += coef * rising * power;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power /= n * n;
    }
    sum
}

/// `Λ(t)` for `t ∈ [0, π/2]` via `Λ(t) = Cl₂(2t)/2`.
fn lambda_series(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let x = 2.0 * t;
    let zeta = zeta_even();
    let r = x / (2.0 * PI);
    let r2 = r * r;
    let mut rpow = 1.0;
    let mut tail = 0.0;
    for (idx, z) in zeta.iter().enumerate() {
        let n = idx as f64 + 1.0;
        rpow *= r2;
        let term = z / (n * (2.0 * n + 1.0)) * rpow;
        tail += term;
        if term < 1e-18 * tail {
            break;
        }
    }
    0.5 * (x - x * x.ln() + x * tail)
}

/// Reduce to `(-π/2, π/2]` modulo π.
fn reduce(theta: f64) -> f64 {
    let mut r = theta - PI * (theta / PI).round();
    if r <= -FRAC_PI_2 {
        r += PI;
    } else if r > FRAC_PI_2 {
        r -= PI;
    }
    r
}

/// Milnor's Lobachevsky function. Returns NaN for non-finite input.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let r = reduce(theta);
    let sign = r.signum();
    let t = r.abs();
    let value = if t <= FRAC_PI_4 {
        lambda_series(t)
    } else {
        // Duplication formula: Λ(π/2 - y) = Λ(y) - Λ(2y)/2.
        let y = FRAC_PI_2 - t;
        lambda_series(y) - 0.5 * lambda_series(2.0 * y)
    };
    if value == 0.0 {
        0.0
    } else {
        sign * value
    }
}

/// Fallible variant that rejects non-finite input.
pub fn try_lobachevsky(theta: f64) -> Result<f64, LobachevskyError> {
    if !theta.is_finite() {
        return Err(LobachevskyError::NonFinite(theta));
    }
    Ok(lobachevsky(theta))
}

/// Distance from `theta` to the nearest multiple of π.
pub fn distance_to_pi_multiple(theta: f64) -> f64 {
    (theta - PI * (theta / PI).round()).abs()
}

/// `Λ'(θ) = -ln|2 sin θ|`.
pub fn lobachevsky_derivative(theta: f64) -> Result<f64, LobachevskyError> {
    if !theta.is_finite() {
        return Err(LobachevskyError::NonFinite(theta));
    }
    if distance_to_pi_multiple(theta) < SINGULAR_TOL {
        return Err(LobachevskyError::SingularArgument(theta));
    }
    Ok(-(2.0 * theta.sin().abs()).ln())
}

/// `Λ'` without the singularity check; infinite at multiples of π.
pub(crate) fn lobachevsky_derivative_unchecked(theta: f64) -> f64 {
    -(2.0 * theta.sin().abs()).ln()
}

/// Smooth part of the integrand: `ln(2 sin t / (t (π - t)))` on `[0, π]`.
fn smooth_log(t: f64) -> f64 {
    let d = PI - t;
    let ratio = if t <= FRAC_PI_2 {
        let sinc = if t == 0.0 { 1.0 } else { t.sin() / t };
        2.0 * sinc / d
    } else {
        let sinc = if d == 0.0 { 1.0 } else { d.sin() / d };
        2.0 * sinc / t
    };
    ratio.ln()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `Λ(θ)` by adaptive quadrature of the defining integral, independent of the
/// series used by [`lobachevsky`]. The logarithmic endpoint singularities
/// `ln t` and `ln(π - t)` are integrated in closed form; the smooth remainder
/// numerically.
pub fn lobachevsky_reference(theta: f64, tol: f64) -> Result<f64, LobachevskyError> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(LobachevskyError::InvalidTolerance(tol));
    }
    if !theta.is_finite() {
        return Err(LobachevskyError::NonFinite(theta));
    }
    let r = theta.rem_euclid(PI);
    if r == 0.0 {
        return Ok(0.0);
    }
    let xlogx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    let log_t = xlogx(r) - r;
    let d = PI - r;
    let log_pi_minus_t = (xlogx(PI) - PI) - (xlogx(d) - d);
    let f = |t: f64| smooth_log(t);
    let (fa, fm, fb) = (f(0.0), f(0.5 * r), f(r));
    let whole = simpson(0.0, r, fa, fm, fb);
    let smooth = adaptive_simpson(&f, 0.0, r, fa, fm, fb, whole, 0.1 * tol, 40);
    Ok(-(log_t + log_pi_minus_t + smooth))
}
