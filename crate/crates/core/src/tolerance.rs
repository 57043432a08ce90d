//! Comparison policy for inequality checks on computed values.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Tolerance used when deciding whether a computed inequality holds.
///
/// The slack at a right-hand side `r` is `max(abs, rel * |r|)`. A strict
/// `lhs < rhs` must hold with the slack as margin; a non-strict `lhs <= rhs`
/// is granted the slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rel: f64,
    pub abs: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel >= 0.0 && rel.is_finite() && abs >= 0.0 && abs.is_finite()) {
            return Err(domain(format!(
                "tolerances must be finite and >= 0, got rel={rel}, abs={abs}"
            )));
        }
        Ok(Self { rel, abs })
    }

    pub fn with_rel(self, rel: f64) -> Result<Self> {
        Self::new(rel, self.abs)
    }

    pub fn slack(&self, rhs: f64) -> f64 {
        self.abs.max(self.rel * rhs.abs())
    }

    /// `lhs < rhs` with a safety margin.
    pub fn strict_lt(&self, lhs: f64, rhs: f64) -> bool {
        lhs < rhs - self.slack(rhs)
    }

    /// `lhs <= rhs` up to the slack.
    pub fn le(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.slack(rhs)
    }

    pub fn check(&self, lhs: f64, rhs: f64, strict: bool) -> bool {
        if strict {
            self.strict_lt(lhs, rhs)
        } else {
            self.le(lhs, rhs)
        }
    }

    /// Signed distance `rhs - lhs`; positive means the inequality side holds.
    pub fn margin(lhs: f64, rhs: f64) -> f64 {
        rhs - lhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_needs_margin() {
        let t = TolerancePolicy::default();
        assert!(t.strict_lt(1.0, 1.0 + 1e-8));
        assert!(!t.strict_lt(1.0, 1.0 + 1e-10));
        assert!(!t.strict_lt(1.0, 1.0));
        assert!(t.strict_lt(0.0, 2e-12));
        assert!(!t.strict_lt(0.0, 5e-13));
    }

    #[test]
    fn non_strict_grants_slack() {
        let t = TolerancePolicy::default();
        assert!(t.le(1.0 + 5e-10, 1.0));
        assert!(!t.le(1.0 + 5e-9, 1.0));
        assert!(t.check(1.0, 1.0, false));
        assert!(!t.check(1.0, 1.0, true));
    }

    #[test]
    fn validation() {
        assert!(TolerancePolicy::new(-1.0, 0.0).is_err());
        assert!(TolerancePolicy::new(1e-9, f64::NAN).is_err());
        assert_eq!(TolerancePolicy::default().with_rel(1e-7).unwrap().rel, 1e-7);
    }
}
