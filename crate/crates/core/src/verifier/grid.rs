use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameter grid: orders `q` and arguments `x`, both strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub q_values: Vec<f64>,
    pub x_values: Vec<f64>,
    pub description: String,
}

/// Orders of the default grid.
pub const DEFAULT_Q: [f64; 9] = [-0.45, -0.25, 0.0, 0.3, 0.5, 1.0, 2.0, 3.5, 5.0];
/// Size of the sub-grid used for pairwise checks.
pub const PAIR_POINTS: usize = 12;

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl Grid {
    pub fn new(
        q_values: Vec<f64>,
        x_values: Vec<f64>,
        description: impl Into<String>,
    ) -> Result<Self> {
        if q_values.is_empty() || x_values.is_empty() {
            return Err(Error::Usage(
                "grid must contain at least one q and one x".into(),
            ));
        }
        if !strictly_increasing(&q_values) || !strictly_increasing(&x_values) {
            return Err(Error::Usage(
                "grid values must be strictly increasing".into(),
            ));
        }
        if let Some(q) = q_values.iter().find(|q| !(**q > -1.0 && q.is_finite())) {
            return Err(Error::Usage(format!(
                "grid orders must satisfy q > -1, got {q}"
            )));
        }
        if let Some(x) = x_values.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::Usage(format!(
                "grid arguments must satisfy x > 0, got {x}"
            )));
        }
        Ok(Self {
            q_values,
            x_values,
            description: description.into(),
        })
    }

    /// `n` logarithmically spaced points on `[lo, hi]`, endpoints included.
    pub fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => {
                let (a, b) = (lo.ln(), hi.ln());
                let mut v: Vec<f64> = (0..n)
                    .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                    .collect();
                v[0] = lo;
                v[n - 1] = hi;
                v
            }
        }
    }

    pub fn single(q: f64, x: f64) -> Result<Self> {
        Self::new(vec![q], vec![x], format!("single point q={q}, x={x}"))
    }

    /// Indices of the pairwise sub-grid: `round(i (n-1)/11)` for `i = 0..12`.
    pub fn pair_indices(&self) -> Vec<usize> {
        let n = self.x_values.len();
        if n <= PAIR_POINTS {
            return (0..n).collect();
        }
        let mut idx: Vec<usize> = (0..PAIR_POINTS)
            .map(|i| ((i * (n - 1)) as f64 / (PAIR_POINTS - 1) as f64).round() as usize)
            .collect();
        idx.dedup();
        idx
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            q_values: DEFAULT_Q.to_vec(),
            x_values: Self::log_points(0.05, 20.0, 60),
            description: "default: 9 orders, 60 log-spaced x on [0.05, 20], 12-point pair sub-grid"
                .into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = Grid::default();
        assert_eq!(g.q_values.len(), 9);
        assert_eq!(g.x_values.len(), 60);
        assert_eq!(g.x_values[0], 0.05);
        assert_eq!(g.x_values[59], 20.0);
        let p = g.pair_indices();
        assert_eq!(p.len(), 12);
        assert_eq!((p[0], p[11]), (0, 59));
        assert!(Grid::new(g.q_values.clone(), g.x_values.clone(), "").is_ok());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Grid::new(vec![], vec![1.0], ""),
            Err(Error::Usage(_))
        ));
        assert!(Grid::new(vec![0.0], vec![], "").is_err());
        assert!(Grid::new(vec![1.0, 0.0], vec![1.0], "").is_err());
        assert!(Grid::new(vec![-1.0], vec![1.0], "").is_err());
        assert!(Grid::new(vec![0.0], vec![0.0, 1.0], "").is_err());
    }
}
