//! Kummer's confluent hypergeometric function `Phi(a, c, x) = 1F1(a; c; x)`.

use super::tricomi::PsiParams;
use crate::error::{domain, failure, Result};

const MAX_TERMS: usize = 100_000;

/// Series sum plus the sum of absolute term values (a cancellation gauge).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSum {
    pub value: f64,
    pub abs_sum: f64,
    pub terms: usize,
}

/// Sums `sum_k (a)_k / ((c)_k k!) x^k` until it stagnates at machine precision.
pub fn kummer_phi_terms(a: f64, c: f64, x: f64) -> Result<PhiSum> {
    if !(a.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(domain("Phi arguments must be finite"));
    }
    if c <= 0.0 && c == c.floor() {
        return Err(domain(format!(
            "Phi undefined for non-positive integer c = {c}"
        )));
    }
    if x < 0.0 {
        return Err(domain(format!("Phi evaluated for x >= 0 only, got {x}")));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * x / ((c + kf) * (kf + 1.0));
        term *= ratio;
        if term == 0.0 {
            return Ok(PhiSum {
                value: sum,
                abs_sum,
                terms: k + 1,
            });
        }
        sum += term;
        abs_sum += term.abs();
        if !sum.is_finite() {
            return Err(failure("kummer-series", "overflow"));
        }
        if ratio.abs() < 0.5 && term.abs() <= 0.25 * f64::EPSILON * sum.abs() {
            return Ok(PhiSum {
                value: sum,
                abs_sum,
                terms: k + 2,
            });
        }
    }
    Err(failure(
        "kummer-series",
        format!("no convergence after {MAX_TERMS} terms (a={a}, c={c}, x={x})"),
    ))
}

/// `Phi(a, c, x)`.
pub fn kummer_phi(p: PsiParams, x: f64) -> Result<f64> {
    kummer_phi_terms(p.a, p.c, x).map(|s| s.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn phi(a: f64, c: f64, x: f64) -> f64 {
        kummer_phi(PsiParams { a, c }, x).unwrap()
    }

    #[test]
    fn equal_parameters_give_exponential() {
        assert!((phi(1.0, 1.0, 1.0) - E).abs() < 1e-15);
        for x in [0.5f64, 3.0, 30.0] {
            let want = x.exp();
            assert!(((phi(2.7, 2.7, x) - want) / want).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(phi(0.3, -1.5, 0.0), 1.0);
        assert_eq!(phi(4.0, 2.0, 0.0), 1.0);
    }

    #[test]
    fn phi_1_2_closed_form() {
        // Phi(1, 2, x) = (e^x - 1)/x
        assert!((phi(1.0, 2.0, 1.0) - (E - 1.0)).abs() < 1e-15);
        for x in [0.01f64, 2.0, 25.0] {
            let want = x.exp_m1() / x;
            assert!(((phi(1.0, 2.0, x) - want) / want).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn terminating_series_for_negative_integer_a() {
        // Phi(-2, c, x) = 1 - 2x/c + x^2/(c(c+1))
        let (c, x) = (1.5, 0.7);
        let want = 1.0 - 2.0 * x / c + x * x / (c * (c + 1.0));
        assert!((phi(-2.0, c, x) - want).abs() < 1e-15);
    }

    #[test]
    fn rejects_pole_parameters() {
        assert!(kummer_phi(PsiParams { a: 1.0, c: -2.0 }, 0.5).is_err());
        assert!(kummer_phi(PsiParams { a: 1.0, c: 0.0 }, 0.5).is_err());
    }
}
