use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::convexity::{power_mean, ConvexitySpec, Direction};
use super::{ordered_map, EvalFailure, Grid, Outcome, Relation, Suite, Track, VerificationReport};
use crate::bounds::{
    mills_f1, mills_f2, mills_f3, mills_f4, mills_f5, vq_lower_exp, vq_lower_kratzel, vq_upper_agm,
    BoundValue,
};
use crate::error::{Error, Result};
use crate::special::gamma::ln_gamma;
use crate::tolerance::TolerancePolicy;
use crate::vq::{mills, vq_prime, vq_value, Order};

/// Orders at which the small-`x` sharpness of the Turán lower constant is checked.
pub const SHARPNESS_Q: [f64; 3] = [0.0, 1.0, 2.5];
const SHARPNESS_X: f64 = 1e-4;
const SHARPNESS_TOL: f64 = 1e-3;
const MILLS_ODE_TOL: f64 = 1e-8;

pub(crate) struct Ctx {
    pub parallel: bool,
}

#[derive(Default)]
struct Sink {
    outcomes: Vec<Outcome>,
    failures: Vec<EvalFailure>,
}

impl Sink {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        track: Track,
        check: &str,
        rel: Relation,
        q: f64,
        x: f64,
        y: Option<f64>,
        lhs: f64,
        rhs: f64,
    ) {
        self.outcomes.push(Outcome {
            check: check.to_string(),
            track,
            relation: rel,
            q,
            x,
            y,
            lhs,
            rhs,
        });
    }

    fn assert(&mut self, check: &str, rel: Relation, q: f64, x: f64, lhs: f64, rhs: f64) {
        self.push(Track::Assert, check, rel, q, x, None, lhs, rhs);
    }

    fn assert_pair(&mut self, check: &str, q: f64, x: f64, y: f64, lhs: f64, rhs: f64) {
        self.push(Track::Assert, check, Relation::Lt, q, x, Some(y), lhs, rhs);
    }

    #[allow(clippy::too_many_arguments)]
    fn observe(
        &mut self,
        check: &str,
        rel: Relation,
        q: f64,
        x: f64,
        y: Option<f64>,
        lhs: f64,
        rhs: f64,
    ) {
        self.push(Track::Observe, check, rel, q, x, y, lhs, rhs);
    }

    fn get<T>(&mut self, suite: Suite, check: &str, q: f64, x: f64, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(EvalFailure {
                    suite,
                    check: check.to_string(),
                    q,
                    x,
                    message: e.to_string(),
                });
                None
            }
        }
    }

    fn extend(&mut self, other: Sink) {
        self.outcomes.extend(other.outcomes);
        self.failures.extend(other.failures);
    }
}

fn gather(parts: Vec<Sink>) -> (Vec<Outcome>, Vec<EvalFailure>) {
    let mut all = Sink::default();
    for p in parts {
        all.extend(p);
    }
    (all.outcomes, all.failures)
}

pub(crate) fn run_one(suite: Suite, g: &Grid, ctx: &Ctx) -> (Vec<Outcome>, Vec<EvalFailure>) {
    match suite {
        Suite::Monotonicity => gather(ordered_map(ctx.parallel, &g.q_values, |&q| {
            monotonicity_q(q, g)
        })),
        Suite::Convexity => {
            let jobs: Vec<(ConvexitySpec, f64)> = ConvexitySpec::corner_set()
                .into_iter()
                .flat_map(|s| {
                    let qs: Vec<f64> = g
                        .q_values
                        .iter()
                        .copied()
                        .filter(|&q| s.region.admits_q(q))
                        .collect();
                    qs.into_iter().map(move |q| (s.clone(), q))
                })
                .collect();
            gather(ordered_map(ctx.parallel, &jobs, |(s, q)| {
                power_mean_q(s, *q, g)
            }))
        }
        Suite::Turan => {
            let mut parts = ordered_map(ctx.parallel, &g.q_values, |&q| turan_q(q, g));
            parts.push(turan_sharpness());
            gather(parts)
        }
        Suite::Logconvexity => gather(ordered_map(ctx.parallel, &g.x_values, |&x| {
            logconvexity_x(x, &g.q_values)
        })),
        Suite::Simon => gather(ordered_map(ctx.parallel, &g.q_values, |&q| simon_q(q, g))),
        Suite::Bounds => {
            let mut parts = vec![mills_block(g)];
            parts.extend(ordered_map(ctx.parallel, &g.q_values, |&q| bounds_q(q, g)));
            gather(parts)
        }
    }
}

fn single(
    suite: Suite,
    g: &Grid,
    tol: TolerancePolicy,
    parts: (Vec<Outcome>, Vec<EvalFailure>),
) -> VerificationReport {
    VerificationReport::assemble(vec![(suite, parts.0, parts.1)], g, tol)
}

/// Values of `V_{q+k}` on the grid arguments.
fn row(s: &mut Sink, suite: Suite, q: f64, xs: &[f64]) -> Vec<Option<f64>> {
    xs.iter()
        .map(|&x| s.get(suite, "evaluate V", q, x, vq_value(q, x)))
        .collect()
}

fn prime_row(s: &mut Sink, suite: Suite, q: f64, xs: &[f64]) -> Vec<Option<f64>> {
    xs.iter()
        .map(|&x| {
            s.get(
                suite,
                "evaluate V'",
                q,
                x,
                Order::new(q).and_then(|o| vq_prime(o, x, None)),
            )
        })
        .collect()
}

/// `check(f(x_i), f(x_{i+1}))` on consecutive grid points; `increasing`
/// asserts `f(x_i) < f(x_{i+1})`.
fn consecutive(s: &mut Sink, check: &str, q: f64, xs: &[f64], f: &[Option<f64>], increasing: bool) {
    for i in 0..xs.len().saturating_sub(1) {
        if let (Some(a), Some(b)) = (f[i], f[i + 1]) {
            let (lhs, rhs) = if increasing { (a, b) } else { (b, a) };
            s.assert_pair(check, q, xs[i], xs[i + 1], lhs, rhs);
        }
    }
}

fn zip_map(
    a: &[Option<f64>],
    b: &[Option<f64>],
    xs: &[f64],
    f: impl Fn(f64, f64, f64) -> f64,
) -> Vec<Option<f64>> {
    a.iter()
        .zip(b)
        .zip(xs)
        .map(|((a, b), &x)| Some(f((*a)?, (*b)?, x)))
        .collect()
}

fn monotonicity_q(q: f64, g: &Grid) -> Sink {
    let suite = Suite::Monotonicity;
    let xs = &g.x_values;
    let mut s = Sink::default();
    let v = row(&mut s, suite, q, xs);
    let d = prime_row(&mut s, suite, q, xs);
    let v1 = row(&mut s, suite, q + 1.0, xs);

    consecutive(
        &mut s,
        "x V'/V decreasing",
        q,
        xs,
        &zip_map(&v, &d, xs, |v, d, x| x * d / v),
        false,
    );
    consecutive(
        &mut s,
        "x^2 V' decreasing",
        q,
        xs,
        &zip_map(&v, &d, xs, |_, d, x| x * x * d),
        false,
    );
    consecutive(
        &mut s,
        "V_(q+1)/V_q increasing",
        q,
        xs,
        &zip_map(&v1, &v, xs, |a, b, _| a / b),
        true,
    );
    consecutive(
        &mut s,
        "V_(q+1) - V_q increasing",
        q,
        xs,
        &zip_map(&v1, &v, xs, |a, b, _| a - b),
        true,
    );
    if q >= 0.0 {
        consecutive(
            &mut s,
            "V'/x increasing",
            q,
            xs,
            &zip_map(&v, &d, xs, |_, d, x| d / x),
            true,
        );
        consecutive(
            &mut s,
            "V'/(x V) increasing",
            q,
            xs,
            &zip_map(&v, &d, xs, |v, d, x| d / (x * v)),
            true,
        );
        let vm = row(&mut s, suite, q - 1.0, xs);
        for i in 0..xs.len() {
            if let (Some(v), Some(d), Some(vm)) = (v[i], d[i], vm[i]) {
                s.assert(
                    "V'/x = 2(V_q - V_(q-1))",
                    Relation::Eq,
                    q,
                    xs[i],
                    d / xs[i],
                    2.0 * (v - vm),
                );
            }
        }
    }
    s
}

/// Monotonicity of the `(a,b)` criterion function and the direct
/// power-mean inequality for one spec and one order.
fn power_mean_q(spec: &ConvexitySpec, q: f64, g: &Grid) -> Sink {
    let suite = Suite::Convexity;
    let xs = &g.x_values;
    let label = spec.label();
    let mut s = Sink::default();
    let v = row(&mut s, suite, q, xs);
    let d = prime_row(&mut s, suite, q, xs);
    let m = zip_map(&v, &d, xs, |v, d, x| spec.monitor(x, v, d));
    let convex = spec.direction == Direction::Convex;
    consecutive(&mut s, &format!("{label} monitor"), q, xs, &m, convex);

    let mid = format!("{label} midpoint");
    let idx = g.pair_indices();
    for &alpha in &spec.alphas {
        for &i in &idx {
            for &j in &idx {
                // the symmetric weight needs each unordered pair once
                if i == j || (alpha == 0.5 && j < i) {
                    continue;
                }
                let (x, y) = (xs[i], xs[j]);
                let (Some(vx), Some(vy)) = (v[i], v[j]) else {
                    continue;
                };
                let z = power_mean(spec.a, x, y, alpha);
                let Some(vz) = s.get(suite, &mid, q, z, vq_value(q, z)) else {
                    continue;
                };
                let hb = power_mean(spec.b, vx, vy, alpha);
                let (lhs, rhs) = if convex { (vz, hb) } else { (hb, vz) };
                s.assert_pair(&mid, q, x, y, lhs, rhs);
            }
        }
    }
    s
}

/// Monitor and midpoint checks for one `(a,b)` spec on a grid.
pub fn check_power_mean(
    spec: &ConvexitySpec,
    grid: &Grid,
    tol: TolerancePolicy,
) -> VerificationReport {
    let parts: Vec<Sink> = grid
        .q_values
        .iter()
        .filter(|q| spec.region.admits_q(**q))
        .map(|&q| power_mean_q(spec, q, grid))
        .collect();
    single(Suite::Convexity, grid, tol, gather(parts))
}

pub fn check_monotonicity_suite(grid: &Grid, tol: TolerancePolicy) -> VerificationReport {
    single(
        Suite::Monotonicity,
        grid,
        tol,
        run_one(Suite::Monotonicity, grid, &Ctx { parallel: true }),
    )
}

/// The Turán-type quantities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuranPoint {
    pub q: f64,
    pub x: f64,
    pub v_q: f64,
    pub v_q1: f64,
    pub v_q2: f64,
    /// `(q+2)(2q+1)/((q+1)(2q+3)) V_q V_{q+2}`
    pub left: f64,
    /// `V_{q+1}^2`
    pub middle: f64,
    /// `(q+2)/(q+1) V_q V_{q+2}`
    pub right: f64,
}

impl TuranPoint {
    pub fn left_constant(q: f64) -> f64 {
        (q + 2.0) * (2.0 * q + 1.0) / ((q + 1.0) * (2.0 * q + 3.0))
    }

    /// `V_{q+1}^2 / (V_q V_{q+2})`.
    pub fn ratio(&self) -> f64 {
        self.v_q1 * self.v_q1 / (self.v_q * self.v_q2)
    }
}

pub fn turan_point(q: f64, x: f64) -> Result<TuranPoint> {
    Order::new(q)?;
    if q == -1.0 {
        return Err(Error::Domain("Turán inequalities need q > -1".into()));
    }
    let v_q = vq_value(q, x)?;
    let v_q1 = vq_value(q + 1.0, x)?;
    let v_q2 = vq_value(q + 2.0, x)?;
    let p = v_q * v_q2;
    Ok(TuranPoint {
        q,
        x,
        v_q,
        v_q1,
        v_q2,
        left: TuranPoint::left_constant(q) * p,
        middle: v_q1 * v_q1,
        right: (q + 2.0) / (q + 1.0) * p,
    })
}

fn turan_q(q: f64, g: &Grid) -> Sink {
    let suite = Suite::Turan;
    let mut s = Sink::default();
    for &x in &g.x_values {
        let Some(t) = s.get(suite, "evaluate V", q, x, turan_point(q, x)) else {
            continue;
        };
        if q > -0.5 {
            s.assert("turan left", Relation::Lt, q, x, t.left, t.middle);
        }
        s.assert("turan right", Relation::Lt, q, x, t.middle, t.right);
        s.assert(
            "V_(q+1)^2 < V_q V_(q+2)",
            Relation::Lt,
            q,
            x,
            t.middle,
            t.v_q * t.v_q2,
        );
        s.assert(
            "(2q+1) V_q < 2(q+1) V_(q+1)",
            Relation::Lt,
            q,
            x,
            (2.0 * q + 1.0) * t.v_q,
            2.0 * (q + 1.0) * t.v_q1,
        );
        s.assert(
            "(q+1) V_(q+1)^2 - (q+2) V_q V_(q+2) > -V_q V_(q+1)",
            Relation::Lt,
            q,
            x,
            -t.v_q * t.v_q1,
            (q + 1.0) * t.middle - (q + 2.0) * t.v_q * t.v_q2,
        );
    }
    s
}

fn turan_sharpness() -> Sink {
    let suite = Suite::Turan;
    let mut s = Sink::default();
    for q in SHARPNESS_Q {
        let c = TuranPoint::left_constant(q);
        if let Some(t) = s.get(
            suite,
            "turan sharpness",
            q,
            SHARPNESS_X,
            turan_point(q, SHARPNESS_X),
        ) {
            s.assert(
                "turan sharpness at x -> 0",
                Relation::Le,
                q,
                SHARPNESS_X,
                (t.ratio() - c).abs(),
                SHARPNESS_TOL,
            );
        }
    }
    let q = 0.0;
    let c = TuranPoint::left_constant(q);
    let xs = [1e-2, 1e-3, 1e-4];
    let gaps: Vec<Option<f64>> = xs
        .iter()
        .map(|&x| {
            s.get(suite, "turan approach", q, x, turan_point(q, x))
                .map(|t| (t.ratio() - c).abs())
        })
        .collect();
    for i in 0..2 {
        if let (Some(a), Some(b)) = (gaps[i], gaps[i + 1]) {
            s.push(
                Track::Assert,
                "turan approach monotone",
                Relation::Lt,
                q,
                xs[i],
                Some(xs[i + 1]),
                b,
                a,
            );
        }
    }
    s
}

pub fn check_turan(grid: &Grid, tol: TolerancePolicy) -> VerificationReport {
    single(
        Suite::Turan,
        grid,
        tol,
        run_one(Suite::Turan, grid, &Ctx { parallel: true }),
    )
}

fn logconvexity_x(x: f64, qs: &[f64]) -> Sink {
    let suite = Suite::Logconvexity;
    let mut s = Sink::default();
    let mut cache: Vec<(f64, Option<f64>)> = Vec::new();
    let mut value = |s: &mut Sink, q: f64| -> Option<f64> {
        if let Some((_, v)) = cache.iter().find(|(k, _)| *k == q) {
            return *v;
        }
        let v = s.get(suite, "evaluate V", q, x, vq_value(q, x));
        cache.push((q, v));
        v
    };
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            let (q1, q2) = (qs[i], qs[j]);
            let qm = 0.5 * (q1 + q2);
            let (Some(v1), Some(v2), Some(vm)) =
                (value(&mut s, q1), value(&mut s, q2), value(&mut s, qm))
            else {
                continue;
            };
            let lg = |q: f64| ln_gamma(q + 1.0).map(f64::exp);
            let (Ok(g1), Ok(g2), Ok(gm)) = (lg(q1), lg(q2), lg(qm)) else {
                continue;
            };
            let (f1, f2, fm) = (g1 * v1, g2 * v2, gm * vm);
            s.push(
                Track::Assert,
                "Gamma(q+1) V_q log-convex in q",
                Relation::Lt,
                q1,
                x,
                Some(q2),
                fm * fm,
                f1 * f2,
            );
            s.observe(
                "V_q log-convex in q (open problem)",
                Relation::Lt,
                q1,
                x,
                Some(q2),
                vm * vm,
                v1 * v2,
            );
        }
    }
    s
}

/// Midpoint log-convexity of `q -> Gamma(q+1) V_q(x)` over all pairs of
/// `q_grid`; pairwise records carry `q1` in `q` and `q2` in `y`.
pub fn check_logconvexity_in_q(
    x: f64,
    q_grid: &[f64],
    tol: TolerancePolicy,
) -> Result<VerificationReport> {
    let g = Grid::new(q_grid.to_vec(), vec![x], format!("x={x}"))?;
    Ok(single(
        Suite::Logconvexity,
        &g,
        tol,
        gather(vec![logconvexity_x(x, q_grid)]),
    ))
}

fn simon_q(q: f64, g: &Grid) -> Sink {
    let suite = Suite::Simon;
    let mut s = Sink::default();
    for &x in &g.x_values {
        let Some(t) = s.get(suite, "evaluate V", q, x, turan_point(q, x)) else {
            continue;
        };
        let p = t.v_q * t.v_q2;
        let d = p - t.middle;
        let w = t.v_q1 * t.v_q2;
        s.assert(
            "V_q V_(q+2) - V_(q+1)^2 <= V_(q+1) V_(q+2)/x",
            Relation::Le,
            q,
            x,
            d,
            w / x,
        );
        s.assert(
            "V_(q+1)^2 - V_q V_(q+2) < 0",
            Relation::Lt,
            q,
            x,
            t.middle,
            p,
        );
        s.observe(
            "V_q V_(q+2) <= V_(q+1)^2 (1 + x^(-2(q+3)) V_(q+2))",
            Relation::Le,
            q,
            x,
            None,
            p,
            t.middle * (1.0 + x.powf(-2.0 * (q + 3.0)) * t.v_q2),
        );
        s.observe(
            "V_q V_(q+2) <= V_(q+1)^2 (1 + x^(-2q-7) V_(q+2))",
            Relation::Le,
            q,
            x,
            None,
            p,
            t.middle * (1.0 + x.powf(-2.0 * q - 7.0) * t.v_q2),
        );
        s.observe(
            "V_q V_(q+2) - V_(q+1)^2 <= V_(q+1) V_(q+2)/x^2",
            Relation::Le,
            q,
            x,
            None,
            d,
            w / (x * x),
        );
    }
    s
}

pub fn check_simon(grid: &Grid, tol: TolerancePolicy) -> VerificationReport {
    single(
        Suite::Simon,
        grid,
        tol,
        run_one(Suite::Simon, grid, &Ctx { parallel: true }),
    )
}

/// Mills-ratio bounds, Gordon's inequality, the Mills equation and the
/// low-order identities on the grid arguments.
fn mills_block(g: &Grid) -> Sink {
    let suite = Suite::Bounds;
    let mut s = Sink::default();
    for &x in &g.x_values {
        let fs = (|| {
            Ok((
                mills(x)?,
                mills_f1(x)?,
                mills_f2(x)?,
                mills_f3(x)?,
                mills_f4(x)?,
                mills_f5(x)?,
            ))
        })();
        let Some((m, f1, f2, f3, f4, f5)) = s.get(suite, "evaluate m", 0.0, x, fs) else {
            continue;
        };
        s.assert("f1 < m", Relation::Lt, 0.0, x, f1, m);
        s.assert("m < f2", Relation::Lt, 0.0, x, m, f2);
        if let BoundValue::Value(f3) = f3 {
            s.assert("m < f3", Relation::Lt, 0.0, x, m, f3);
            if x > 1.0 {
                s.assert("f3 < f2", Relation::Lt, 0.0, x, f3, f2);
            }
        }
        s.assert("m < f4", Relation::Lt, 0.0, x, m, f4);
        s.assert("m < f5", Relation::Lt, 0.0, x, m, f5);

        let x2 = x * x;
        let printed_f4 = (1.0 - x2 + (x2 * (x2 + 6.0) + 1.0).sqrt()) / (4.0 * x);
        s.assert("f4 printed form", Relation::Eq, 0.0, x, printed_f4, f4);
        if (x - SQRT_2).abs() > 1e-6 {
            let printed_f5 =
                (5.0 * x2 - 3.0 - (x2 * (x2 + 18.0) + 9.0).sqrt()) / (4.0 * x * (x2 - 2.0));
            s.assert("f5 printed form", Relation::Eq, 0.0, x, printed_f5, f5);
        }

        let h = 1e-5 * x.max(1.0);
        if x > h {
            let ode = (|| Ok((mills(x + h)? - mills(x - h)?) / (2.0 * h)))();
            if let Some(dm) = s.get(suite, "evaluate m'", 0.0, x, ode) {
                s.assert(
                    "m' = x m - 1",
                    Relation::Le,
                    0.0,
                    x,
                    (dm - (x * m - 1.0)).abs(),
                    MILLS_ODE_TOL,
                );
            }
        }

        let vs = (|| Ok((vq_value(0.0, x)?, vq_value(1.0, x)?, vq_value(2.0, x)?)))();
        let Some((v0, v1, v2)) = s.get(suite, "evaluate V", 0.0, x, vs) else {
            continue;
        };
        s.assert("V_0 < 1/x", Relation::Lt, 0.0, x, v0, 1.0 / x);
        s.assert(
            "2 V_1 = (1 - 2x^2) V_0 + 2x",
            Relation::Eq,
            0.0,
            x,
            2.0 * v1,
            (1.0 - 2.0 * x2) * v0 + 2.0 * x,
        );
        s.assert(
            "8 V_2 = (4x^4 - 4x^2 + 3) V_0 + 2x(3 - 2x^2)",
            Relation::Eq,
            0.0,
            x,
            8.0 * v2,
            (4.0 * x2 * x2 - 4.0 * x2 + 3.0) * v0 + 2.0 * x * (3.0 - 2.0 * x2),
        );
    }
    s
}

/// Ratio bracket and envelope bounds for one order.
fn bounds_q(q: f64, g: &Grid) -> Sink {
    let suite = Suite::Bounds;
    let mut s = Sink::default();
    let Ok(order) = Order::new(q) else { return s };
    for &x in &g.x_values {
        let Some(v) = s.get(suite, "evaluate V", q, x, vq_value(q, x)) else {
            continue;
        };
        if q >= 0.0 {
            if let Some(vm) = s.get(suite, "evaluate V", q - 1.0, x, vq_value(q - 1.0, x)) {
                let r = v / vm;
                s.assert(
                    "2x^2/(2x^2+1) < V_q/V_(q-1)",
                    Relation::Lt,
                    q,
                    x,
                    2.0 * x * x / (2.0 * x * x + 1.0),
                    r,
                );
                s.assert("V_q/V_(q-1) < 1", Relation::Lt, q, x, r, 1.0);
            }
        }
        if let Some(lo) = s.get(suite, "lower_exp", q, x, vq_lower_exp(order, x)) {
            s.assert("lower_exp < V_q", Relation::Lt, q, x, lo, v);
        }
        if let Some(lo) = s.get(suite, "lower_kratzel", q, x, vq_lower_kratzel(order, x)) {
            s.assert("lower_kratzel < V_q", Relation::Lt, q, x, lo, v);
        }
        if q > -0.75 {
            if let Some(hi) = s.get(suite, "upper_agm", q, x, vq_upper_agm(order, x)) {
                s.assert("V_q < upper_agm", Relation::Lt, q, x, v, hi);
            }
        }
    }
    s
}

pub fn check_bounds_suite(grid: &Grid, tol: TolerancePolicy) -> VerificationReport {
    single(
        Suite::Bounds,
        grid,
        tol,
        run_one(Suite::Bounds, grid, &Ctx { parallel: true }),
    )
}
