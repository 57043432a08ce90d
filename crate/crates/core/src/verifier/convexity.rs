//! `(a,b)`-convexity with respect to power means.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Convex,
    Concave,
}

/// The proven parameter regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// concave, `a, b <= 0`, `q > -1`
    A,
    /// concave, `a <= -1`, `b <= 1`, `q > -1`
    B,
    /// convex, `a >= 2`, `b >= 1`, `q >= 0`
    C,
    /// convex, `a >= 2`, `b >= 0`, `q >= 0`
    D,
    /// concave, `a <= 1`, `b <= -1`, `q >= 0`
    E,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::A, Region::B, Region::C, Region::D, Region::E];

    pub fn direction(self) -> Direction {
        match self {
            Region::C | Region::D => Direction::Convex,
            _ => Direction::Concave,
        }
    }

    pub fn contains(self, a: f64, b: f64) -> bool {
        match self {
            Region::A => a <= 0.0 && b <= 0.0,
            Region::B => a <= -1.0 && b <= 1.0,
            Region::C => a >= 2.0 && b >= 1.0,
            Region::D => a >= 2.0 && b >= 0.0,
            Region::E => a <= 1.0 && b <= -1.0,
        }
    }

    pub fn admits_q(self, q: f64) -> bool {
        match self {
            Region::A | Region::B => q > -1.0,
            _ => q >= 0.0,
        }
    }

    /// Corners and one interior point of the region used on grids.
    pub fn samples(self) -> Vec<(f64, f64)> {
        let (aa, bb): (&[f64], &[f64]) = match self {
            Region::A => (&[-3.0, -1.0, 0.0], &[-3.0, 0.0]),
            Region::B => (&[-1.0, -2.0], &[-1.0, 0.0, 1.0]),
            Region::C => (&[2.0, 3.0], &[1.0, 2.0]),
            Region::D => (&[2.0, 3.0], &[0.0, 0.5]),
            Region::E => (&[0.0, 1.0], &[-1.0, -2.0]),
        };
        aa.iter()
            .flat_map(|&a| bb.iter().map(move |&b| (a, b)))
            .collect()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::A => "a",
            Region::B => "b",
            Region::C => "c",
            Region::D => "d",
            Region::E => "e",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexitySpec {
    pub region: Region,
    pub a: f64,
    pub b: f64,
    pub direction: Direction,
    /// Weights used by the midpoint check.
    pub alphas: Vec<f64>,
}

impl ConvexitySpec {
    pub fn new(region: Region, a: f64, b: f64) -> Result<Self> {
        if !region.contains(a, b) {
            return Err(domain(format!(
                "(a, b) = ({a}, {b}) lies outside region {region}"
            )));
        }
        Ok(Self {
            region,
            a,
            b,
            direction: region.direction(),
            alphas: vec![0.5, 0.3],
        })
    }

    pub fn with_alphas(mut self, alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() || alphas.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
            return Err(domain("midpoint weights must lie in (0, 1)"));
        }
        self.alphas = alphas;
        Ok(self)
    }

    /// Every sampled spec of every region.
    pub fn corner_set() -> Vec<Self> {
        Region::ALL
            .iter()
            .flat_map(|&r| {
                r.samples()
                    .into_iter()
                    .map(move |(a, b)| Self::new(r, a, b).unwrap())
            })
            .collect()
    }

    pub fn label(&self) -> String {
        format!("region-{}(a={},b={})", self.region, self.a, self.b)
    }

    /// `x^{1-a} f'(x) f(x)^{b-1}`.
    pub fn monitor(&self, x: f64, f: f64, df: f64) -> f64 {
        (1.0 - self.a)
            .mul_add(x.ln(), (self.b - 1.0) * f.ln())
            .exp()
            * df
    }
}

/// Weighted power mean `(alpha x^p + (1-alpha) y^p)^{1/p}`, geometric at `p = 0`.
pub fn power_mean(p: f64, x: f64, y: f64, alpha: f64) -> f64 {
    if p == 0.0 {
        (alpha * x.ln() + (1.0 - alpha) * y.ln()).exp()
    } else {
        (alpha * x.powf(p) + (1.0 - alpha) * y.powf(p)).powf(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn means() {
        assert!((power_mean(1.0, 1.0, 3.0, 0.5) - 2.0).abs() < 1e-15);
        assert!((power_mean(0.0, 1.0, 4.0, 0.5) - 2.0).abs() < 1e-15);
        assert!((power_mean(-1.0, 1.0, 3.0, 0.5) - 1.5).abs() < 1e-15);
        assert!((power_mean(2.0, 1.0, 7.0, 0.5) - 5.0).abs() < 1e-14);
        let g = power_mean(0.0, 2.0, 5.0, 0.3);
        assert!((g - 2f64.powf(0.3) * 5f64.powf(0.7)).abs() < 1e-14);
    }

    #[test]
    fn region_membership() {
        assert_eq!(ConvexitySpec::corner_set().len(), 6 + 6 + 4 + 4 + 4);
        assert!(ConvexitySpec::new(Region::A, 1.0, 0.0).is_err());
        assert!(ConvexitySpec::new(Region::C, 2.0, 0.5).is_err());
        assert!(ConvexitySpec::new(Region::D, 2.0, 0.5).is_ok());
        assert_eq!(
            ConvexitySpec::new(Region::E, 1.0, -1.0).unwrap().direction,
            Direction::Concave
        );
        assert!(!Region::C.admits_q(-0.25));
        assert!(Region::B.admits_q(-0.45));
    }
}
