//! Tricomi's confluent hypergeometric function `psi(a, c, x) = U(a, c, x)`.
//!
//! Three evaluation paths:
//!
//! * `Series`: `Gamma(1-c)/Gamma(a-c+1) Phi(a,c,x) + Gamma(c-1)/Gamma(a) x^{1-c} Phi(a-c+1,2-c,x)`,
//!   used for `x <= 1` when `c` is at least `1e-3` away from every integer
//!   and the two terms do not cancel badly.
//! * `Asymptotic`: `x^{-a} sum_k (-1)^k (a)_k (a-c+1)_k / (k! x^k)` truncated
//!   at its smallest term, for `x >= max(30, 4 a |a-c+1|)`.
//! * `Integral`: `x^{-a}/Gamma(a) int e^{-s} s^{a-1} (1+s/x)^{c-a-1} ds` by
//!   generalized Gauss-Laguerre (see [`crate::quadrature`]); needs `a > 0`.
//!   For `a <= 0` the integral is taken at `a+m, a+m+1` and the contiguous
//!   relation `U(a-1) = (2a - c + x) U(a) - a(a-c+1) U(a+1)` is run
//!   downward, which is the stable direction for the recessive solution.

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma_signed;
use super::kummer::kummer_phi_terms;
use crate::error::{domain, failure, Error, Result};
use crate::quadrature::{laplace_power_integral, QuadratureSpec};

/// Parameters `(a, c)` of `psi(a, c, .)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiParams {
    pub a: f64,
    pub c: f64,
}

impl PsiParams {
    pub fn new(a: f64, c: f64) -> Self {
        Self { a, c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiPath {
    Series,
    Asymptotic,
    Integral,
    /// Integral at shifted `a` followed by downward recurrence in `a`.
    ShiftedIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEval {
    pub value: f64,
    pub abs_err_est: f64,
    pub path: PsiPath,
}

impl PsiEval {
    pub fn rel_err_est(&self) -> f64 {
        self.abs_err_est / self.value.abs()
    }
}

/// Minimum distance of `c` from an integer for the series path.
pub const POLE_GUARD: f64 = 1e-3;
const SERIES_MAX_X: f64 = 1.0;
const SERIES_MAX_REL_ERR: f64 = 1e-11;

fn near_integer(c: f64) -> bool {
    (c - c.round()).abs() <= POLE_GUARD
}

/// Whether the asymptotic path is selected for these parameters.
pub fn asymptotic_applies(p: PsiParams, x: f64) -> bool {
    x >= (4.0 * p.a * (p.a - p.c + 1.0)).abs().max(30.0)
}

/// `ln|Gamma(num)| - ln|Gamma(den)|` with sign, where a pole in the
/// denominator makes the ratio zero.
fn gamma_ratio(num: f64, den: f64) -> Result<Option<(f64, f64)>> {
    if den <= 0.0 && den == den.floor() {
        return Ok(None);
    }
    let (ln_n, s_n) = ln_gamma_signed(num)?;
    let (ln_d, s_d) = ln_gamma_signed(den)?;
    Ok(Some((ln_n - ln_d, s_n * s_d)))
}

fn psi_series(p: PsiParams, x: f64) -> Result<PsiEval> {
    let PsiParams { a, c } = p;
    if near_integer(c) {
        return Err(domain(format!(
            "series path excluded: c = {c} is within {POLE_GUARD} of an integer"
        )));
    }
    let ln_x = x.ln();
    let mut value = 0.0;
    let mut gauge = 0.0;
    if let Some((lc, sc)) = gamma_ratio(1.0 - c, a - c + 1.0)? {
        let phi = kummer_phi_terms(a, c, x)?;
        let scale = lc.exp();
        value += sc * scale * phi.value;
        gauge += scale * phi.abs_sum;
    }
    if let Some((lc, sc)) = gamma_ratio(c - 1.0, a)? {
        let phi = kummer_phi_terms(a - c + 1.0, 2.0 - c, x)?;
        let scale = (lc + (1.0 - c) * ln_x).exp();
        value += sc * scale * phi.value;
        gauge += scale * phi.abs_sum;
    }
    if !value.is_finite() || !gauge.is_finite() {
        return Err(failure("psi-series", "overflow in series terms"));
    }
    // rounding in the sums plus ~1e-14 relative error in the gamma ratios
    let abs_err_est = gauge * (16.0 * f64::EPSILON + 1e-14);
    Ok(PsiEval {
        value,
        abs_err_est,
        path: PsiPath::Series,
    })
}

fn psi_asymptotic(p: PsiParams, x: f64) -> Result<PsiEval> {
    let PsiParams { a, c } = p;
    let b = a - c + 1.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut omitted = 0.0f64;
    for k in 0..10_000 {
        let kf = k as f64;
        let next = -term * (a + kf) * (b + kf) / ((kf + 1.0) * x);
        if next == 0.0 {
            omitted = 0.0;
            break;
        }
        if next.abs() >= term.abs() || next.abs() <= 0.25 * f64::EPSILON * sum.abs() {
            omitted = next.abs();
            break;
        }
        sum += next;
        term = next;
    }
    let scale = (-a * x.ln()).exp();
    let value = scale * sum;
    if !(value.is_finite() && value != 0.0) {
        return Err(failure("psi-asymptotic", "scale out of range"));
    }
    Ok(PsiEval {
        value,
        // x^{-a} inherits the rounding of a ln x
        abs_err_est: scale * omitted + (4.0 + (a * x.ln()).abs()) * f64::EPSILON * value.abs(),
        path: PsiPath::Asymptotic,
    })
}

fn psi_integral(p: PsiParams, x: f64, spec: &QuadratureSpec) -> Result<PsiEval> {
    let PsiParams { a, c } = p;
    if !(a > 0.0) {
        return Err(domain(format!("integral path needs a > 0, got {a}")));
    }
    let q = laplace_power_integral(a - 1.0, c - a - 1.0, x, spec).map_err(|e| match e {
        Error::NumericalFailure { message, .. } => failure("psi-integral", message),
        other => other,
    })?;
    let scale = (-a * x.ln()).exp();
    Ok(PsiEval {
        value: scale * q.value,
        abs_err_est: scale * q.abs_err_est,
        path: PsiPath::Integral,
    })
}

fn psi_shifted(p: PsiParams, x: f64, spec: &QuadratureSpec) -> Result<PsiEval> {
    let PsiParams { a, c } = p;
    // smallest m >= 1 with a + m > 0
    let m = ((-a).floor() + 1.0).max(1.0) as usize;
    let top = a + m as f64;
    let upper = psi_integral(PsiParams::new(top + 1.0, c), x, spec)?;
    let lower = psi_integral(PsiParams::new(top, c), x, spec)?;
    let (mut u_hi, mut u_lo) = (upper.value, lower.value);
    let mut err_scale = upper.rel_err_est().max(lower.rel_err_est());
    let mut amp = u_lo.abs();
    let mut cur = top;
    for _ in 0..m {
        // U(cur-1) = (2cur - c + x) U(cur) - cur (cur - c + 1) U(cur+1)
        let next = (2.0 * cur - c + x) * u_lo - cur * (cur - c + 1.0) * u_hi;
        amp = amp.max(((2.0 * cur - c + x) * u_lo).abs() + (cur * (cur - c + 1.0) * u_hi).abs());
        u_hi = u_lo;
        u_lo = next;
        cur -= 1.0;
    }
    err_scale = err_scale.max(4.0 * f64::EPSILON);
    Ok(PsiEval {
        value: u_lo,
        abs_err_est: amp * err_scale * (m as f64 + 1.0),
        path: PsiPath::ShiftedIntegral,
    })
}

/// Evaluates `psi(a, c, x)` along a forced path.
pub fn tricomi_psi_path(
    p: PsiParams,
    x: f64,
    path: PsiPath,
    spec: &QuadratureSpec,
) -> Result<PsiEval> {
    check_args(p, x)?;
    match path {
        PsiPath::Series => psi_series(p, x),
        PsiPath::Asymptotic => psi_asymptotic(p, x),
        PsiPath::Integral => psi_integral(p, x, spec),
        PsiPath::ShiftedIntegral => psi_shifted(p, x, spec),
    }
}

fn check_args(p: PsiParams, x: f64) -> Result<()> {
    if !(p.a.is_finite() && p.c.is_finite()) {
        return Err(domain("psi parameters must be finite"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("psi needs x > 0, got {x}")));
    }
    Ok(())
}

/// Evaluates `psi(a, c, x)` with automatic path selection and an error
/// estimate, using the given quadrature schedule for the integral path.
pub fn tricomi_psi_with(p: PsiParams, x: f64, spec: &QuadratureSpec) -> Result<PsiEval> {
    check_args(p, x)?;
    if asymptotic_applies(p, x) {
        let r = psi_asymptotic(p, x)?;
        if r.rel_err_est() <= 1e-13 {
            return Ok(r);
        }
    }
    let mut series_attempt = None;
    if !near_integer(p.c) && (x <= SERIES_MAX_X || p.a <= 0.0) {
        match psi_series(p, x) {
            Ok(r) if r.rel_err_est() <= SERIES_MAX_REL_ERR => return Ok(r),
            Ok(r) => series_attempt = Some(r),
            Err(_) => {}
        }
    }
    let fallback = if p.a > 0.0 {
        psi_integral(p, x, spec)
    } else {
        psi_shifted(p, x, spec)
    };
    match (fallback, series_attempt) {
        (Ok(r), Some(s)) if s.rel_err_est() < r.rel_err_est() => Ok(s),
        (Ok(r), _) => Ok(r),
        (Err(_), Some(s)) => Ok(s),
        (Err(e), None) => Err(e),
    }
}

/// Evaluates `psi(a, c, x)` with automatic path selection and an error estimate.
pub fn tricomi_psi_eval(p: PsiParams, x: f64) -> Result<PsiEval> {
    tricomi_psi_with(p, x, &QuadratureSpec::default())
}

/// `psi(a, c, x)`.
pub fn tricomi_psi(p: PsiParams, x: f64) -> Result<f64> {
    tricomi_psi_eval(p, x).map(|r| r.value)
}
