//! Quadrature for the Laplace-type integrals behind `V_q` and `psi`.
//!
//! Everything reduces to the normalized integral
//!
//! ```text
//! I(alpha, beta, z) = 1/Gamma(alpha+1) * int_0^inf e^{-s} s^alpha (1 + s/z)^beta ds
//! ```
//!
//! with `alpha > -1`. When `z >= 1` and `|beta| <= max(2, z)` the factor
//! `(1 + s/z)^beta` is smooth on the Laguerre scale and a single generalized
//! Gauss-Laguerre rule with weight `s^alpha e^{-s}` is used.
//!
//! Otherwise the factor varies on the scale `z / |beta|`, and the half-line is
//! split at `s0 = min(1, z / max(1, |beta|)) / 2`: `[0, s0]` takes a
//! Gauss-Jacobi rule with weight `s^alpha`, and `[s0, inf)` a composite
//! Gauss-Legendre rule in `w = ln s`, truncated where the integrand has
//! dropped below `e^{-46}` of its peak.

pub mod rules;

use serde::{Deserialize, Serialize};

use crate::error::{domain, failure, Result};
use crate::special::gamma::ln_gamma;

/// Node-count escalation schedule and acceptance tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    node_counts: Vec<usize>,
    rel_tol: f64,
}

impl QuadratureSpec {
    pub fn new(node_counts: Vec<usize>, rel_tol: f64) -> Result<Self> {
        if node_counts.len() < 2 {
            return Err(domain("quadrature needs at least two node counts"));
        }
        if node_counts[0] == 0 || node_counts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain(
                "node counts must be positive and strictly increasing",
            ));
        }
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(domain(format!(
                "rel_tol must lie in (0, 1e-2], got {rel_tol}"
            )));
        }
        Ok(Self {
            node_counts,
            rel_tol,
        })
    }

    pub fn node_counts(&self) -> &[usize] {
        &self.node_counts
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            node_counts: vec![40, 80, 160, 320],
            rel_tol: 1e-12,
        }
    }
}

/// Result of an escalated quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_err_est: f64,
    /// Node count of the accepted (finer) rule.
    pub nodes: usize,
}

const LOG_DROP: f64 = 46.0;
const PANEL_NODES: usize = 10;

fn laguerre_matched(beta: f64, z: f64) -> bool {
    z >= 1.0 && beta.abs() <= z.max(2.0)
}

/// Log of the integrand in `w = ln s`, including the Jacobian.
fn log_integrand_w(alpha: f64, beta: f64, z: f64, lg1: f64, w: f64) -> f64 {
    let s = w.exp();
    (alpha + 1.0) * w - s + beta * (s / z).ln_1p() - lg1
}

/// Integration window `[w_lo, w_hi]` for the log-variable piece.
fn log_window(alpha: f64, beta: f64, z: f64, lg1: f64, w_lo: f64) -> f64 {
    let f = |w: f64| log_integrand_w(alpha, beta, z, lg1, w);
    // beyond this the -e^w term dominates every other contribution
    let dominated = (2.0 * (alpha + 1.0 + beta.abs()) + 2.0).ln().max(w_lo);
    let mut peak = f(w_lo);
    let mut w = w_lo;
    loop {
        w += 0.25;
        let v = f(w);
        peak = peak.max(v);
        if w > dominated && v < peak - LOG_DROP {
            return w;
        }
    }
}

fn fixed_rule(alpha: f64, beta: f64, z: f64, lg1: f64, n: usize) -> f64 {
    if laguerre_matched(beta, z) {
        let rule = rules::laguerre(n, alpha);
        return rule.apply(|s| (beta * (s / z).ln_1p()).exp());
    }

    let s0 = 0.5 * (z / beta.abs().max(1.0)).min(1.0);

    // [0, s0]: s = s0 u
    let jac = rules::jacobi_unit((n / 2).max(8), alpha);
    let pref = ((alpha + 1.0) * s0.ln() - (alpha + 1.0).ln() - lg1).exp();
    let head = pref * jac.apply(|u| (-s0 * u + beta * (s0 * u / z).ln_1p()).exp());

    // [s0, inf): s = e^w
    let w_lo = s0.ln();
    let w_hi = log_window(alpha, beta, z, lg1, w_lo);
    let target_width = 80.0 / n as f64;
    let panels = ((w_hi - w_lo) / target_width).ceil().max(1.0) as usize;
    let width = (w_hi - w_lo) / panels as f64;
    let leg = rules::legendre_unit(PANEL_NODES);
    let mut body = 0.0;
    for p in 0..panels {
        let a = w_lo + p as f64 * width;
        body += width * leg.apply(|t| log_integrand_w(alpha, beta, z, lg1, a + t * width).exp());
    }

    head + body
}

/// Evaluates `I(alpha, beta, z)` with node escalation per `spec`.
pub fn laplace_power_integral(
    alpha: f64,
    beta: f64,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<QuadOutcome> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain(format!("integral needs alpha > -1, got {alpha}")));
    }
    if !(z > 0.0) || !z.is_finite() || !beta.is_finite() {
        return Err(domain(format!(
            "integral needs z > 0 and finite beta, got z={z}, beta={beta}"
        )));
    }
    let lg1 = ln_gamma(alpha + 1.0)?;
    let counts = spec.node_counts();
    let mut prev = fixed_rule(alpha, beta, z, lg1, counts[0]);
    let mut last_diff = f64::INFINITY;
    for &n in &counts[1..] {
        let cur = fixed_rule(alpha, beta, z, lg1, n);
        if !cur.is_finite() {
            return Err(failure("quadrature", format!("non-finite sum at n={n}")));
        }
        let diff = (cur - prev).abs();
        if diff <= spec.rel_tol() * cur.abs() {
            return Ok(QuadOutcome {
                value: cur,
                abs_err_est: diff + 4.0 * f64::EPSILON * cur.abs(),
                nodes: n,
            });
        }
        last_diff = diff / cur.abs();
        prev = cur;
    }
    Err(failure(
        "quadrature",
        format!(
            "no convergence for alpha={alpha}, beta={beta}, z={z}: last relative change {last_diff:e}"
        ),
    ))
}
