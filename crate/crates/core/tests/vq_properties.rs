use coulomb_core::{
    mills, vq, vq_next, vq_prime, vq_quadrature, vq_value, vq_via_psi, vq_zero, DerivMethod,
    EvalMethod, Order, QuadratureSpec, VqMethod,
};
use proptest::prelude::*;

fn o(q: f64) -> Order {
    Order::new(q).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

const QS: [f64; 8] = [-0.85, -0.5, -0.2, 0.0, 0.7, 2.0, 5.0, 10.0];

#[test]
fn positive_and_decreasing() {
    for q in QS {
        let xs = log_grid(0.05, 30.0, 50);
        let mut prev = f64::INFINITY;
        for &x in &xs {
            let v = vq_value(q, x).unwrap();
            assert!(v > 0.0 && v < prev, "q={q} x={x}");
            assert!(vq_prime(o(q), x, None).unwrap() < 0.0);
            prev = v;
        }
    }
}

#[test]
fn quadrature_matches_psi() {
    let spec = QuadratureSpec::default();
    for q in QS {
        for x in log_grid(0.05, 30.0, 25) {
            let a = vq_quadrature(o(q), x, &spec).unwrap().value;
            let b = vq_via_psi(o(q), x).unwrap().value;
            assert!(rel(a, b) <= 1e-8, "q={q} x={x}: {a} vs {b}");
        }
    }
    let a = vq(o(0.7), 2.3, Some(VqMethod::Quadrature)).unwrap().value;
    let b = vq_via_psi(o(0.7), 2.3).unwrap().value;
    assert!(rel(a, b) <= 1e-9);
}

#[test]
fn derivative_identity() {
    for q in [0.0, 0.3, 1.0, 2.5, 7.0] {
        for x in log_grid(0.05, 30.0, 20) {
            let v = vq_value(q, x).unwrap();
            let lhs = (2.0 * q + 1.0) * v - 2.0 * (q + 1.0) * vq_value(q + 1.0, x).unwrap();
            let rhs = 2.0 * x * x * (v - vq_value(q - 1.0, x).unwrap());
            assert!(rel(lhs, rhs) <= 1e-8, "q={q} x={x}");
        }
    }
}

#[test]
fn order_monotonicity_and_ratio_bracket() {
    for x in log_grid(0.05, 30.0, 30) {
        let vs: Vec<f64> = QS.iter().map(|&q| vq_value(q, x).unwrap()).collect();
        assert!(vs.windows(2).all(|w| w[1] < w[0]), "x={x}");
        for q in [0.0, 0.5, 1.0, 3.0] {
            let r = vq_value(q, x).unwrap() / vq_value(q - 1.0, x).unwrap();
            assert!(
                2.0 * x * x / (2.0 * x * x + 1.0) < r && r < 1.0,
                "q={q} x={x}"
            );
        }
    }
}

#[test]
fn tail_normalization() {
    for q in [0.0, 1.0, 2.5] {
        let t = 100.0 * vq_value(q, 100.0).unwrap();
        assert!((0.99..=1.0).contains(&t), "q={q}: {t}");
    }
    let x = 1e3;
    let r = vq(o(0.0), x, None).unwrap();
    assert_eq!(r.method, EvalMethod::PsiAsymptotic);
    assert!(rel(r.value, (1.0 - 0.5 / (x * x) + 0.75 / x.powi(4)) / x) < 1e-12);
}

#[test]
fn special_points() {
    // (q = -1/2, x = 1) and (q = 1/2, x = 2) from an independent high-precision quadrature
    assert!(rel(vq_value(-0.5, 1.0).unwrap(), 0.859_886_639_641_008_6) < 1e-12);
    assert!(rel(vq_value(0.5, 2.0).unwrap(), 0.433_091_404_664_498) < 1e-12);
    let r = vq_quadrature(o(0.5), 1e-6, &QuadratureSpec::default()).unwrap();
    assert!(rel(r.value, 2.0 / std::f64::consts::PI.sqrt()) < 1e-5);
    let v = vq_next(
        o(0.3),
        vq_value(0.3, 2.0).unwrap(),
        vq_value(-0.7, 2.0).unwrap(),
        2.0,
    )
    .unwrap();
    assert!(rel(v, vq_value(1.3, 2.0).unwrap()) <= 1e-9);
}

#[test]
fn derivative_methods_agree() {
    for q in [0.0, 0.5, 1.0, 2.0, 6.0] {
        for x in [0.05, 0.3, 1.0, 4.0, 25.0] {
            let a = vq_prime(o(q), x, Some(DerivMethod::Integral)).unwrap();
            let b = vq_prime(o(q), x, Some(DerivMethod::Differ)).unwrap();
            let c = vq_prime(o(q), x, Some(DerivMethod::Difvq)).unwrap();
            assert!(
                rel(b, a) <= 1e-8 && rel(c, a) <= 1e-8,
                "q={q} x={x}: {a} {b} {c}"
            );
        }
    }
}

#[test]
fn mills_relations() {
    for x in log_grid(0.05, 30.0, 40) {
        let h = 1e-5 * x.max(1.0);
        let m = mills(x).unwrap();
        let dm = (mills(x + h).unwrap() - mills(x - h).unwrap()) / (2.0 * h);
        assert!((dm - (x * m - 1.0)).abs() <= 1e-8, "x={x}");
        let via = vq_value(0.0, x / 2f64.sqrt()).unwrap() / 2f64.sqrt();
        assert!((m - via).abs() <= 1e-10 * m.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn router_is_deterministic_and_within_limit(q in -0.45f64..20.0, x in 0.0f64..50.0) {
        let a = vq(o(q), x, None).unwrap();
        let b = vq(o(q), x, None).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.value > 0.0);
        prop_assert!(a.value <= vq_zero(o(q)).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn recurrence_method_matches_direct(k in 0u32..=8, x in 0.2f64..5.0) {
        let r = vq(o(k as f64), x, Some(VqMethod::Recurrence)).unwrap();
        let d = vq(o(k as f64), x, Some(VqMethod::Quadrature)).unwrap();
        prop_assert!(rel(r.value, d.value) <= 1e-8, "k={} x={}: {} vs {}", k, x, r.value, d.value);
    }
}
