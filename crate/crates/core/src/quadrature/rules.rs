//! Gauss rules from three-term recurrence coefficients (Golub-Welsch).
//!
//! The Jacobi matrix is diagonalized with implicit QL, tracking only the
//! first component of each eigenvector, which is all the weights need.
//! All rules returned here are normalized so that the weights sum to one.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Nodes and weights of a Gauss rule; weights sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * f(x) })
            .sum()
    }
}

/// Builds the rule for a symmetric tridiagonal Jacobi matrix with the given
/// diagonal and off-diagonal (`offdiag.len() == diag.len() - 1`).
pub fn golub_welsch(diag: &[f64], offdiag: &[f64]) -> Rule {
    let n = diag.len();
    assert!(n > 0 && offdiag.len() + 1 == n);
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(offdiag);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 100, "implicit QL did not converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zi1 = z[i + 1];
                z[i + 1] = s * z[i] + c * zi1;
                z[i] = c * z[i] - s * zi1;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z.into_iter().map(|v| v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1 / total).collect(),
    }
}

/// Generalized Gauss-Laguerre rule for the weight `s^alpha e^{-s}` on `(0, inf)`.
pub fn laguerre_rule(n: usize, alpha: f64) -> Rule {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n)
        .map(|k| ((k as f64) * (k as f64 + alpha)).sqrt())
        .collect();
    golub_welsch(&diag, &off)
}

/// Gauss-Jacobi rule for the weight `(1-x)^a (1+x)^b` on `[-1, 1]`.
pub fn jacobi_rule(n: usize, a: f64, b: f64) -> Rule {
    let ab = a + b;
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let t = 2.0 * k as f64 + ab;
                (b * b - a * a) / (t * (t + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            let t = 2.0 * k + ab;
            (4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0))).sqrt()
        })
        .collect();
    golub_welsch(&diag, &off)
}

/// Gauss-Legendre rule on `[-1, 1]` (normalized weights).
pub fn legendre_rule(n: usize) -> Rule {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    golub_welsch(&diag, &off)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    Laguerre,
    JacobiLeft,
    Legendre,
}

thread_local! {
    static RULES: RefCell<HashMap<(Family, usize, u64), Rc<Rule>>> = RefCell::new(HashMap::new());
}

const CACHE_LIMIT: usize = 512;

fn cached(family: Family, n: usize, alpha: f64, build: impl FnOnce() -> Rule) -> Rc<Rule> {
    let key = (family, n, alpha.to_bits());
    if let Some(rule) = RULES.with(|c| c.borrow().get(&key).cloned()) {
        return rule;
    }
    let rule = Rc::new(build());
    RULES.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, rule.clone());
    });
    rule
}

/// Memoized [`laguerre_rule`]. Rules are a pure function of `(n, alpha)`,
/// so memoization never changes results.
pub(crate) fn laguerre(n: usize, alpha: f64) -> Rc<Rule> {
    cached(Family::Laguerre, n, alpha, || laguerre_rule(n, alpha))
}

/// Memoized rule for the weight `u^alpha` on `[0, 1]`.
pub(crate) fn jacobi_unit(n: usize, alpha: f64) -> Rc<Rule> {
    cached(Family::JacobiLeft, n, alpha, || {
        let r = jacobi_rule(n, 0.0, alpha);
        Rule {
            nodes: r.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect(),
            weights: r.weights,
        }
    })
}

/// Memoized Gauss-Legendre rule mapped to `[0, 1]`.
pub(crate) fn legendre_unit(n: usize) -> Rc<Rule> {
    cached(Family::Legendre, n, 0.0, || {
        let r = legendre_rule(n);
        Rule {
            nodes: r.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect(),
            weights: r.weights,
        }
    })
}
