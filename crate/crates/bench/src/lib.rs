//! Shared inputs for the benchmarks.

/// `(q, x)` pairs covering the small-x, quadrature and asymptotic regimes.
pub fn regime_points() -> Vec<(&'static str, f64, f64)> {
    vec![
        ("small-x", 0.5, 0.01),
        ("mid-x", 0.5, 1.5),
        ("mid-x-high-q", 10.0, 4.0),
        ("large-x", 2.0, 40.0),
    ]
}

/// Orders used across benchmark sweeps.
pub const ORDERS: [f64; 5] = [-0.5, 0.0, 0.7, 2.0, 5.0];

/// `n` log-spaced points on `[lo, hi]`.
pub fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}
