//! Closed-form bounds: Mills-ratio bounds `f1..f5` and lower/upper envelopes of `V_q`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::gamma::ln_gamma;
use crate::special::kratzel::{kratzel_z, KratzelParams};
use crate::vq::{mills, Order};

/// Lower end of the range where `f3` bounds the Mills ratio: `sqrt(sqrt 2 - 1)`.
pub const F3_THRESHOLD: f64 = 0.643_594_252_905_582_6;

/// A bound that is only defined on part of the half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundValue {
    Value(f64),
    NotApplicable,
}

impl BoundValue {
    pub fn value(self) -> Option<f64> {
        match self {
            BoundValue::Value(v) => Some(v),
            BoundValue::NotApplicable => None,
        }
    }
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{what} needs finite x > 0, got {x}")))
    }
}

/// `x/(x^2+1)`, a lower bound of `m(x)`.
pub fn mills_f1(x: f64) -> Result<f64> {
    positive(x, "f1")?;
    Ok(x / x.mul_add(x, 1.0))
}

/// `1/x` (Gordon).
pub fn mills_f2(x: f64) -> Result<f64> {
    positive(x, "f2")?;
    Ok(1.0 / x)
}

/// `x(x^2+1)/(x^4+2x^2-1)` without the domain restriction.
pub fn mills_f3_raw(x: f64) -> Result<f64> {
    positive(x, "f3")?;
    let x2 = x * x;
    Ok(x * (x2 + 1.0) / (x2 * (x2 + 2.0) - 1.0))
}

/// `f3`, marked not applicable for `x <= sqrt(sqrt 2 - 1)`.
pub fn mills_f3(x: f64) -> Result<BoundValue> {
    let v = mills_f3_raw(x)?;
    Ok(if x > F3_THRESHOLD {
        BoundValue::Value(v)
    } else {
        BoundValue::NotApplicable
    })
}

/// `(1 - x^2 + sqrt(x^4+6x^2+1))/(4x)` as `2x/(x^2 - 1 + sqrt(x^4+6x^2+1))`.
pub fn mills_f4(x: f64) -> Result<f64> {
    positive(x, "f4")?;
    let x2 = x * x;
    let s = (x2 * (x2 + 6.0) + 1.0).sqrt();
    Ok(2.0 * x / (x2 - 1.0 + s))
}

/// `(5x^2 - 3 - sqrt(x^4+18x^2+9))/(4x(x^2-2))` as `6x/(5x^2 - 3 + sqrt(x^4+18x^2+9))`,
/// finite at `x = sqrt 2`.
pub fn mills_f5(x: f64) -> Result<f64> {
    positive(x, "f5")?;
    let x2 = x * x;
    let s = (x2 * (x2 + 18.0) + 9.0).sqrt();
    Ok(6.0 * x / (5.0 * x2 - 3.0 + s))
}

/// The bounds and the Mills ratio at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MillsBoundRow {
    pub x: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: Option<f64>,
    pub f4: f64,
    pub f5: f64,
    pub m: f64,
}

impl MillsBoundRow {
    /// Smallest of the upper bounds that apply at this point.
    pub fn min_upper(&self) -> f64 {
        let u = self.f2.min(self.f4).min(self.f5);
        self.f3.map_or(u, |f3| u.min(f3))
    }
}

pub fn mills_bounds(x: f64) -> Result<MillsBoundRow> {
    Ok(MillsBoundRow {
        x,
        f1: mills_f1(x)?,
        f2: mills_f2(x)?,
        f3: mills_f3(x)?.value(),
        f4: mills_f4(x)?,
        f5: mills_f5(x)?,
        m: mills(x)?,
    })
}

fn regular(q: Order, what: &str) -> Result<f64> {
    if q.is_sentinel() {
        Err(domain(format!("{what} needs q > -1")))
    } else {
        Ok(q.q())
    }
}

/// `2^{q+1} x^{2q+1} / (1+2x^2)^{q+1}`, a lower bound of `V_q(x)`.
pub fn vq_lower_exp(q: Order, x: f64) -> Result<f64> {
    let q = regular(q, "lower_exp")?;
    positive(x, "lower_exp")?;
    let ln = (q + 1.0) * LN_2 + (2.0 * q + 1.0) * x.ln() - (q + 1.0) * (2.0 * x * x).ln_1p();
    Ok(ln.exp())
}

/// `Gamma(q+3/4) / (sqrt(2x) Gamma(q+1))`, an upper bound of `V_q(x)` for `q > -3/4`.
pub fn vq_upper_agm(q: Order, x: f64) -> Result<f64> {
    let q = regular(q, "upper_agm")?;
    if q <= -0.75 {
        return Err(domain(format!("upper_agm needs q > -3/4, got {q}")));
    }
    positive(x, "upper_agm")?;
    Ok((ln_gamma(q + 0.75)? - ln_gamma(q + 1.0)?).exp() / (2.0 * x).sqrt())
}

/// `Z_1^{q+1/2}(x^2/2) / Gamma(q+1)`, a lower bound of `V_q(x)`.
pub fn vq_lower_kratzel(q: Order, x: f64) -> Result<f64> {
    let q = regular(q, "lower_kratzel")?;
    positive(x, "lower_kratzel")?;
    let z = kratzel_z(KratzelParams {
        rho: 1.0,
        nu: q + 0.5,
        t: 0.5 * x * x,
    })?;
    Ok(z * (-ln_gamma(q + 1.0)?).exp())
}

/// The three envelope bounds at one point; `upper_agm` is absent for `q <= -3/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VqEnvelope {
    pub lower_exp: f64,
    pub upper_agm: Option<f64>,
    pub lower_kratzel: f64,
}

pub fn vq_envelope(q: Order, x: f64) -> Result<VqEnvelope> {
    Ok(VqEnvelope {
        lower_exp: vq_lower_exp(q, x)?,
        upper_agm: if q.q() > -0.75 {
            Some(vq_upper_agm(q, x)?)
        } else {
            None
        },
        lower_kratzel: vq_lower_kratzel(q, x)?,
    })
}
