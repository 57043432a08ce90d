//! Complementary error function and its scaled form `erfcx(x) = e^{x^2} erfc(x)`.
//!
//! For `|x| < 2` the positive-term series
//! `erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!` is used; above
//! that the Laplace continued fraction for `erfcx` is evaluated with
//! modified Lentz.

use std::f64::consts::PI;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_LIMIT: f64 = 2.0;

/// Unscaled erfc together with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfcValue {
    pub value: f64,
    /// Set when `e^{-x^2}` has left the normal range and the result lost
    /// relative accuracy (or flushed to zero). Use [`erfcx`] instead.
    pub underflow: bool,
}

/// `e^{-x^2}` with the rounding error of `x*x` compensated.
fn exp_neg_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (-lo).exp()
}

/// `e^{x^2}` with the rounding error of `x*x` compensated.
fn exp_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    hi.exp() * lo.exp()
}

/// Sum of the positive series; returns `erf(x) e^{x^2}` for `x >= 0`.
fn erf_scaled_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// `erfcx(x)` for `x >= SERIES_LIMIT` from the continued fraction
/// `1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`.
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..10_000 {
        let a = k as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

/// Scaled complementary error function `e^{x^2} erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * exp_sq(x) - erfcx(-x);
    }
    if x < SERIES_LIMIT {
        exp_sq(x) - erf_scaled_series(x)
    } else if x.is_infinite() {
        0.0
    } else {
        erfcx_cf(x)
    }
}

/// Complementary error function with underflow reporting.
pub fn erfc_checked(x: f64) -> ErfcValue {
    if x.is_nan() {
        return ErfcValue {
            value: f64::NAN,
            underflow: false,
        };
    }
    if x < 0.0 {
        let r = erfc_checked(-x);
        return ErfcValue {
            value: 2.0 - r.value,
            underflow: false,
        };
    }
    if x < SERIES_LIMIT {
        let value = 1.0 - exp_neg_sq(x) * erf_scaled_series(x);
        return ErfcValue {
            value,
            underflow: false,
        };
    }
    let g = exp_neg_sq(x);
    let value = g * erfcx_cf(x);
    ErfcValue {
        value,
        underflow: g < f64::MIN_POSITIVE || value < f64::MIN_POSITIVE,
    }
}

/// Complementary error function. Flushes to zero (or a subnormal) for
/// `x` beyond about 26.5; see [`erfc_checked`].
pub fn erfc(x: f64) -> f64 {
    erfc_checked(x).value
}
