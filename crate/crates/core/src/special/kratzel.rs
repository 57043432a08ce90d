//! Kratzel integral `Z_rho^nu(t) = int_0^inf u^{nu-1} exp(-u^rho - t/u) du`.
//!
//! With `u = e^w` the integrand becomes `exp(nu w - e^{rho w} - t e^{-w})`,
//! which decays double-exponentially at `+inf` and, for `t > 0`, at `-inf`
//! too. The trapezoid rule on the truncated line is then spectrally
//! accurate; the step is halved until two successive sums agree.

use serde::{Deserialize, Serialize};

use super::gamma::gamma;
use crate::error::{domain, failure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KratzelParams {
    pub rho: f64,
    pub nu: f64,
    pub t: f64,
}

const REL_TOL: f64 = 1e-12;
/// Tail cut: drop the range where the log-integrand is this far below its peak.
const LOG_DROP: f64 = 46.0;

fn log_integrand(p: &KratzelParams, w: f64) -> f64 {
    p.nu * w - (p.rho * w).exp() - p.t * (-w).exp()
}

/// Largest `w` (searching in direction `dir`) before the log-integrand
/// falls `LOG_DROP` below `peak_val`.
fn tail_end(p: &KratzelParams, peak: f64, peak_val: f64, dir: f64) -> f64 {
    let mut step = 0.5;
    let mut w = peak;
    for _ in 0..4000 {
        let next = w + dir * step;
        if log_integrand(p, next) < peak_val - LOG_DROP {
            return next;
        }
        w = next;
        step = (step * 1.5).min(8.0);
    }
    w
}

/// Location of the maximum of the log-integrand (it is concave for `rho > 0`, `t >= 0`).
fn peak(p: &KratzelParams) -> f64 {
    // phi'(w) = nu - rho e^{rho w} + t e^{-w}, strictly decreasing
    let dphi = |w: f64| p.nu - p.rho * (p.rho * w).exp() + p.t * (-w).exp();
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    while dphi(lo) < 0.0 {
        lo *= 2.0;
    }
    while dphi(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dphi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * (1.0 + mid.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates the Kratzel integral.
///
/// Supported: `rho > 0`, `t >= 0`, and `nu > 0` when `t = 0`.
pub fn kratzel_z(p: KratzelParams) -> Result<f64> {
    if !(p.rho > 0.0 && p.rho.is_finite()) {
        return Err(Error::Unsupported(format!(
            "Kratzel exponent rho = {}",
            p.rho
        )));
    }
    if !(p.t >= 0.0 && p.t.is_finite() && p.nu.is_finite()) {
        return Err(domain(format!(
            "Kratzel argument t must be finite and >= 0, got {}",
            p.t
        )));
    }
    if p.t == 0.0 {
        if p.nu <= 0.0 {
            return Err(domain(format!(
                "Kratzel integral diverges for t = 0, nu = {}",
                p.nu
            )));
        }
        // int u^{nu-1} e^{-u^rho} du = Gamma(nu/rho)/rho
        return Ok(gamma(p.nu / p.rho)? / p.rho);
    }

    let w0 = peak(&p);
    let top = log_integrand(&p, w0);
    let lo = tail_end(&p, w0, top, -1.0);
    let hi = tail_end(&p, w0, top, 1.0);
    let f = |w: f64| (log_integrand(&p, w) - top).exp();

    let mut n = 64usize;
    let mut h = (hi - lo) / n as f64;
    let mut sum = 0.5 * (f(lo) + f(hi)) + (1..n).map(|i| f(lo + i as f64 * h)).sum::<f64>();
    let mut prev = sum * h;
    for _ in 0..14 {
        // add the midpoints
        let mids: f64 = (0..n).map(|i| f(lo + (i as f64 + 0.5) * h)).sum();
        sum += mids;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        if (cur - prev).abs() <= REL_TOL * cur.abs() {
            return Ok(cur * top.exp());
        }
        prev = cur;
    }
    Err(failure(
        "kratzel-trapezoid",
        format!("no convergence for {p:?}"),
    ))
}
