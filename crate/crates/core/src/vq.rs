//! Evaluation of `V_q(x)`, its derivative, order recurrences and the Mills ratio.
//!
//! Available representations:
//!
//! * quadrature: `V_q(x) = 1/Gamma(q+1) int_0^inf e^{-t} t^q (x^2+t)^{-1/2} dt`
//! * Tricomi: `V_q(x) = x^{2q+1} psi(q+1, q+3/2, x^2) = psi(1/2, 1/2-q, x^2)`
//! * closed form at `q = 0`: `V_0(x) = sqrt(pi) e^{x^2} erfc(x)`
//! * limit: `V_q(0) = Gamma(q+1/2)/Gamma(q+1)` for `q > -1/2`
//! * the convention `V_{-1}(x) = 1/x`
//!
//! The automatic router picks: `x = 0` limit, `0 < x <= 0.05` Tricomi (with a
//! bound check against the limit), `0.05 < x < 30` quadrature, `x >= 30`
//! Tricomi (asymptotic series).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, failure, Error, Result};
use crate::quadrature::{laplace_power_integral, QuadratureSpec};
use crate::special::erfc::erfcx;
use crate::special::gamma::ln_gamma;
use crate::special::tricomi::{tricomi_psi_eval, PsiEval, PsiParams, PsiPath};

/// Upper end of the small-`x` regime routed to the Tricomi series.
pub const SMALL_X: f64 = 0.05;
/// Lower end of the large-`x` regime routed to the asymptotic expansion.
pub const LARGE_X: f64 = 30.0;
/// Largest order span the forward recurrence is trusted over.
pub const MAX_RECURRENCE_SPAN: usize = 8;
/// Relative agreement required between the two Tricomi forms.
pub const PSI_FORM_AGREEMENT: f64 = 1e-9;

/// The order `q` of `V_q`: either `q > -1` or the sentinel `q = -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    /// The conventional order `-1` with `V_{-1}(x) = 1/x`.
    pub const SENTINEL: Order = Order(-1.0);

    pub fn new(q: f64) -> Result<Self> {
        if q == -1.0 || (q > -1.0 && q.is_finite()) {
            Ok(Self(q))
        } else {
            Err(domain(format!(
                "order must satisfy q > -1 (or be the sentinel -1), got {q}"
            )))
        }
    }

    pub fn q(self) -> f64 {
        self.0
    }

    pub fn is_sentinel(self) -> bool {
        self.0 == -1.0
    }

    /// `q + k` as an order.
    pub fn shifted(self, k: f64) -> Result<Self> {
        Self::new(self.0 + k)
    }

    fn regular(self, what: &str) -> Result<f64> {
        if self.is_sentinel() {
            Err(domain(format!(
                "{what} needs q > -1; the sentinel order is not allowed"
            )))
        } else {
            Ok(self.0)
        }
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMethod {
    Quadrature,
    PsiSeries,
    PsiAsymptotic,
    PsiIntegral,
    Recurrence,
    ClosedFormQ0,
    LimitX0,
    Convention,
}

impl EvalMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMethod::Quadrature => "quadrature",
            EvalMethod::PsiSeries => "psi-series",
            EvalMethod::PsiAsymptotic => "psi-asymptotic",
            EvalMethod::PsiIntegral => "psi-integral",
            EvalMethod::Recurrence => "recurrence",
            EvalMethod::ClosedFormQ0 => "closed-form-q0",
            EvalMethod::LimitX0 => "limit-x0",
            EvalMethod::Convention => "convention",
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<PsiPath> for EvalMethod {
    fn from(p: PsiPath) -> Self {
        match p {
            PsiPath::Series => EvalMethod::PsiSeries,
            PsiPath::Asymptotic => EvalMethod::PsiAsymptotic,
            PsiPath::Integral | PsiPath::ShiftedIntegral => EvalMethod::PsiIntegral,
        }
    }
}

/// A value of `V_q(x)` with its error estimate and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub method: EvalMethod,
}

impl EvalResult {
    fn checked(self) -> Result<Self> {
        if self.value > 0.0 && self.value.is_finite() && self.abs_err_est.is_finite() {
            Ok(self)
        } else {
            Err(failure(
                "vq",
                format!(
                    "{} produced value {} (err {})",
                    self.method, self.value, self.abs_err_est
                ),
            ))
        }
    }
}

/// Requested evaluation method for [`vq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VqMethod {
    #[default]
    Auto,
    Quadrature,
    Psi,
    /// `sqrt(pi) erfcx(x)`; `q = 0` only.
    ClosedForm,
    /// Forward recurrence from `(V_{-1}, V_0)`; integer `0 <= q <= 8` only.
    Recurrence,
}

/// `V_q(x)` for `x >= 0`.
pub fn vq(q: Order, x: f64, method: Option<VqMethod>) -> Result<EvalResult> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("V_q needs finite x >= 0, got {x}")));
    }
    if q.is_sentinel() {
        return vq_neg1(x).map(|value| EvalResult {
            value,
            abs_err_est: 0.0,
            method: EvalMethod::Convention,
        });
    }
    if x == 0.0 {
        return vq_zero(q).map(|value| EvalResult {
            value,
            abs_err_est: 4.0 * f64::EPSILON * value,
            method: EvalMethod::LimitX0,
        });
    }
    match method.unwrap_or_default() {
        VqMethod::Auto => vq_auto(q, x),
        VqMethod::Quadrature => vq_quadrature(q, x, &QuadratureSpec::default()),
        VqMethod::Psi => vq_via_psi(q, x),
        VqMethod::ClosedForm => vq_closed_form(q, x),
        VqMethod::Recurrence => vq_recurrence(q, x),
    }
}

/// `V_q(x)` through the automatic router, value only.
pub fn vq_value(q: f64, x: f64) -> Result<f64> {
    vq(Order::new(q)?, x, None).map(|r| r.value)
}

fn vq_auto(q: Order, x: f64) -> Result<EvalResult> {
    if x <= SMALL_X {
        let r = vq_via_psi(q, x)?;
        if q.q() > -0.5 {
            let limit = vq_zero(q)?;
            if r.value > limit * (1.0 + 1e-9) {
                return Err(failure(
                    "psi-series",
                    format!(
                        "V_{q}({x}) = {} exceeds its limit V_{q}(0) = {limit}",
                        r.value
                    ),
                ));
            }
        }
        return Ok(r);
    }
    if x < LARGE_X {
        return match vq_quadrature(q, x, &QuadratureSpec::default()) {
            Ok(r) => Ok(r),
            Err(e) => vq_via_psi(q, x).map_err(|_| e),
        };
    }
    vq_via_psi(q, x)
}

/// `V_q(x)` by generalized Gauss-Laguerre quadrature of
/// `1/Gamma(q+1) int e^{-t} t^q (x^2+t)^{-1/2} dt`.
pub fn vq_quadrature(q: Order, x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let q = q.regular("vq_quadrature")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("vq_quadrature needs x > 0, got {x}")));
    }
    let r = laplace_power_integral(q, -0.5, x * x, spec)?;
    EvalResult {
        value: r.value / x,
        abs_err_est: r.abs_err_est / x,
        method: EvalMethod::Quadrature,
    }
    .checked()
}

fn scaled(psi: PsiEval, ln_scale: f64) -> EvalResult {
    let s = ln_scale.exp();
    EvalResult {
        value: s * psi.value,
        abs_err_est: s * psi.abs_err_est + ln_scale.abs() * f64::EPSILON * (s * psi.value).abs(),
        method: psi.path.into(),
    }
}

/// `V_q(x)` through both Tricomi forms; returns the one with the smaller
/// error estimate after checking that they agree.
pub fn vq_via_psi(q: Order, x: f64) -> Result<EvalResult> {
    let q = q.regular("vq_via_psi")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("vq_via_psi needs x > 0, got {x}")));
    }
    let z = x * x;
    let form_a = tricomi_psi_eval(PsiParams::new(q + 1.0, q + 1.5), z)
        .map(|p| scaled(p, (2.0 * q + 1.0) * x.ln()))
        .and_then(EvalResult::checked);
    let form_b = tricomi_psi_eval(PsiParams::new(0.5, 0.5 - q), z)
        .map(|p| scaled(p, 0.0))
        .and_then(EvalResult::checked);
    match (form_a, form_b) {
        (Ok(a), Ok(b)) => {
            let diff = (a.value - b.value).abs() / a.value.min(b.value);
            if diff > PSI_FORM_AGREEMENT {
                return Err(failure(
                    "psi",
                    format!(
                        "Tricomi forms disagree at q={q}, x={x}: {} vs {} ({diff:e})",
                        a.value, b.value
                    ),
                ));
            }
            if a.abs_err_est / a.value <= b.abs_err_est / b.value {
                Ok(a)
            } else {
                Ok(b)
            }
        }
        (Ok(a), Err(_)) => Ok(a),
        (Err(_), Ok(b)) => Ok(b),
        (Err(e), Err(_)) => Err(e),
    }
}

/// `V_0(x) = sqrt(pi) erfcx(x)`.
pub fn vq_closed_form_q0(x: f64) -> f64 {
    PI.sqrt() * erfcx(x)
}

fn vq_closed_form(q: Order, x: f64) -> Result<EvalResult> {
    if q.q() != 0.0 {
        return Err(domain(format!(
            "closed form exists for q = 0 only, got q = {q}"
        )));
    }
    let value = vq_closed_form_q0(x);
    Ok(EvalResult {
        value,
        abs_err_est: 8.0 * f64::EPSILON * value,
        method: EvalMethod::ClosedFormQ0,
    })
}

fn vq_recurrence(q: Order, x: f64) -> Result<EvalResult> {
    let qv = q.q();
    if qv.fract() != 0.0 || qv < 0.0 || qv > MAX_RECURRENCE_SPAN as f64 {
        return Err(domain(format!(
            "recurrence method needs an integer order in [0, {MAX_RECURRENCE_SPAN}], got {q}"
        )));
    }
    let mut prev = 1.0 / x;
    let mut cur = vq_closed_form_q0(x);
    for k in 0..qv as usize {
        let next = vq_next(Order::new(k as f64)?, cur, prev, x)?;
        prev = cur;
        cur = next;
    }
    EvalResult {
        value: cur,
        abs_err_est: 16.0 * f64::EPSILON * cur * (1.0 + x * x).powf(qv),
        method: EvalMethod::Recurrence,
    }
    .checked()
}

/// `V_q(0) = Gamma(q + 1/2) / Gamma(q + 1)`, finite for `q > -1/2`.
pub fn vq_zero(q: Order) -> Result<f64> {
    let qv = q.q();
    if qv <= -0.5 {
        return Err(Error::Divergence(format!(
            "V_q(0) is infinite for q = {qv} <= -1/2"
        )));
    }
    Ok((ln_gamma(qv + 0.5)? - ln_gamma(qv + 1.0)?).exp())
}

/// `V_{-1}(x) = 1/x`.
pub fn vq_neg1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("V_-1(x) = 1/x needs x > 0, got {x}")));
    }
    Ok(1.0 / x)
}

/// Formula used for `V_q'(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivMethod {
    /// `-x/Gamma(q+1) int e^{-t} t^q (x^2+t)^{-3/2} dt`
    #[default]
    Integral,
    /// `x V_q' = (2q+1) V_q - 2(q+1) V_{q+1}`
    Differ,
    /// `V_q' = 2x (V_q - V_{q-1})`, `q >= 0`
    Difvq,
}

/// `V_q'(x)` for `x > 0`; always negative.
pub fn vq_prime(q: Order, x: f64, method: Option<DerivMethod>) -> Result<f64> {
    let qv = q.regular("vq_prime")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("vq_prime needs x > 0, got {x}")));
    }
    let d = match method.unwrap_or_default() {
        DerivMethod::Integral => {
            let r = laplace_power_integral(qv, -1.5, x * x, &QuadratureSpec::default())?;
            -r.value / (x * x)
        }
        DerivMethod::Differ => {
            let v0 = vq(q, x, None)?.value;
            let v1 = vq(q.shifted(1.0)?, x, None)?.value;
            ((2.0 * qv + 1.0) * v0 - 2.0 * (qv + 1.0) * v1) / x
        }
        DerivMethod::Difvq => {
            if qv < 0.0 {
                return Err(domain(format!("difvq derivative needs q >= 0, got {qv}")));
            }
            let v0 = vq(q, x, None)?.value;
            let vm = vq(q.shifted(-1.0)?, x, None)?.value;
            2.0 * x * (v0 - vm)
        }
    };
    if d < 0.0 && d.is_finite() {
        Ok(d)
    } else {
        Err(failure(
            "vq_prime",
            format!("non-negative derivative {d} at q={qv}, x={x}"),
        ))
    }
}

/// `V_{q+1}(x)` from `V_q(x)` and `V_{q-1}(x)` via
/// `2(q+1) V_{q+1} = (2q+1-2x^2) V_q + 2x^2 V_{q-1}`.
pub fn vq_next(q: Order, vq_val: f64, vq_minus1_val: f64, x: f64) -> Result<f64> {
    let qv = q.q();
    if qv < 0.0 {
        return Err(domain(format!("vq_next needs q >= 0, got {qv}")));
    }
    if !(vq_val > 0.0 && vq_minus1_val > 0.0) {
        return Err(domain(format!(
            "vq_next needs positive inputs, got V_q = {vq_val}, V_(q-1) = {vq_minus1_val}"
        )));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("vq_next needs x > 0, got {x}")));
    }
    let x2 = 2.0 * x * x;
    Ok(((2.0 * qv + 1.0 - x2) * vq_val + x2 * vq_minus1_val) / (2.0 * (qv + 1.0)))
}

/// Mills ratio `m(x) = e^{x^2/2} int_x^inf e^{-t^2/2} dt = V_0(x/sqrt 2)/sqrt 2`.
pub fn mills(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Mills ratio needs x > 0, got {x}")));
    }
    Ok((PI / 2.0).sqrt() * erfcx(x / std::f64::consts::SQRT_2))
}

#[cfg(test)]
mod tests {
    use super::*;

    const V0_1: f64 = 0.757_872_156_141_312_1;
    const V1_1: f64 = 0.621_063_921_929_343_9;
    const V2_1: f64 = 0.534_202_058_552_992;

    fn o(q: f64) -> Order {
        Order::new(q).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn order_validation() {
        assert!(Order::new(-1.0).unwrap().is_sentinel());
        assert!(Order::new(-0.99).is_ok());
        assert!(Order::new(-1.5).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert!(Order::new(f64::INFINITY).is_err());
    }

    #[test]
    fn reference_values_at_one() {
        for (q, want) in [(0.0, V0_1), (1.0, V1_1), (2.0, V2_1)] {
            for m in [VqMethod::Auto, VqMethod::Quadrature, VqMethod::Psi] {
                let got = vq(o(q), 1.0, Some(m)).unwrap().value;
                assert!(rel(got, want) < 1e-12, "q={q} {m:?}: {got}");
            }
        }
        let cf = vq(o(0.0), 1.0, Some(VqMethod::ClosedForm)).unwrap();
        assert!(rel(cf.value, V0_1) < 1e-14);
        let rec = vq(o(2.0), 1.0, Some(VqMethod::Recurrence)).unwrap();
        assert!(rel(rec.value, V2_1) < 1e-13);
    }

    #[test]
    fn zero_argument_routes_to_limit() {
        let r = vq(o(0.0), 0.0, None).unwrap();
        assert_eq!(r.method, EvalMethod::LimitX0);
        assert!(rel(r.value, PI.sqrt()) < 1e-14);
        assert!(matches!(vq(o(-0.7), 0.0, None), Err(Error::Divergence(_))));
    }

    #[test]
    fn vq_zero_values() {
        assert!(rel(vq_zero(o(0.0)).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(vq_zero(o(0.5)).unwrap(), 2.0 / PI.sqrt()) < 1e-14);
        assert!(rel(vq_zero(o(1.0)).unwrap(), PI.sqrt() / 2.0) < 1e-14);
        assert!(vq_zero(o(-0.5)).is_err());
    }

    #[test]
    fn sentinel_convention() {
        assert_eq!(vq_neg1(1.0).unwrap(), 1.0);
        assert_eq!(vq_neg1(2.0).unwrap(), 0.5);
        assert_eq!(vq_neg1(0.1).unwrap(), 10.0);
        assert!(vq_neg1(0.0).is_err());
        let r = vq(Order::SENTINEL, 2.0, None).unwrap();
        assert_eq!((r.value, r.method), (0.5, EvalMethod::Convention));
    }

    #[test]
    fn domain_errors() {
        assert!(vq(o(0.0), -1.0, None).is_err());
        assert!(vq(o(0.5), 1.0, Some(VqMethod::ClosedForm)).is_err());
        assert!(vq(o(0.5), 1.0, Some(VqMethod::Recurrence)).is_err());
        assert!(vq_quadrature(Order::SENTINEL, 1.0, &QuadratureSpec::default()).is_err());
        assert!(vq_prime(o(-0.5), 1.0, Some(DerivMethod::Difvq)).is_err());
        assert!(vq_next(o(0.0), -1.0, 1.0, 1.0).is_err());
        assert!(vq_next(o(-0.5), 1.0, 1.0, 1.0).is_err());
        assert!(mills(0.0).is_err());
    }

    #[test]
    fn router_regimes() {
        assert_eq!(
            vq(o(0.0), 0.01, None).unwrap().method,
            EvalMethod::PsiSeries
        );
        assert_eq!(
            vq(o(0.0), 1.0, None).unwrap().method,
            EvalMethod::Quadrature
        );
        assert_eq!(
            vq(o(0.0), 40.0, None).unwrap().method,
            EvalMethod::PsiAsymptotic
        );
    }

    #[test]
    fn derivative_methods_agree_at_one() {
        let want = V0_1 - 2.0 * V1_1;
        for m in [
            DerivMethod::Integral,
            DerivMethod::Differ,
            DerivMethod::Difvq,
        ] {
            let got = vq_prime(o(0.0), 1.0, Some(m)).unwrap();
            assert!(rel(got, want) < 1e-11, "{m:?}: {got} vs {want}");
        }
        assert!((want - -0.484_255_6).abs() < 1e-7);
    }

    #[test]
    fn recurrence_reproduces_closed_identities() {
        let v1 = vq_next(o(0.0), V0_1, 1.0, 1.0).unwrap();
        assert!(rel(v1, V1_1) < 1e-14);
        let v2 = vq_next(o(1.0), v1, V0_1, 1.0).unwrap();
        assert!(rel(v2, V2_1) < 1e-13);
    }

    #[test]
    fn mills_values() {
        assert!(rel(mills(1.0).unwrap(), 0.655_679_542_418_798_5) < 1e-14);
        assert!(rel(mills(2.0).unwrap(), 0.421_369_229_288_054_5) < 1e-14);
        assert!(rel(mills(100.0).unwrap(), 0.01) < 1e-4);
        let via_vq = vq(o(0.0), 2.0 / 2f64.sqrt(), None).unwrap().value / 2f64.sqrt();
        assert!((mills(2.0).unwrap() - via_vq).abs() <= 1e-10);
    }
}
