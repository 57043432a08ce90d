use coulomb_core::quadrature::QuadratureSpec;
use coulomb_core::special::{erfcx, kummer_phi, tricomi_psi, tricomi_psi_path, PsiParams, PsiPath};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn kummer_transformation_grid() {
    for a in [0.5, 1.0, 2.3] {
        for c in [-1.2, 0.4, 1.7] {
            for i in 0..=40 {
                let x = 0.1 * 100f64.powf(i as f64 / 40.0);
                let lhs = tricomi_psi(PsiParams::new(a, c), x).unwrap();
                let rhs =
                    x.powf(1.0 - c) * tricomi_psi(PsiParams::new(1.0 + a - c, 2.0 - c), x).unwrap();
                assert!(rel(rhs, lhs) <= 1e-9, "a={a} c={c} x={x}: {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn erfc_chain() {
    for i in 0..=30 {
        let x = 0.1 * 50f64.powf(i as f64 / 30.0);
        let psi = tricomi_psi(PsiParams::new(1.0, 1.5), x * x).unwrap();
        let want = std::f64::consts::PI.sqrt() * erfcx(x);
        assert!(rel(x * psi, want) <= 1e-9, "x={x}");
    }
}

#[test]
fn kummer_phi_closed_forms() {
    let e = std::f64::consts::E;
    assert!(rel(kummer_phi(PsiParams::new(1.0, 1.0), 1.0).unwrap(), e) < 1e-14);
    assert!(rel(kummer_phi(PsiParams::new(1.0, 2.0), 1.0).unwrap(), e - 1.0) < 1e-14);
    assert_eq!(kummer_phi(PsiParams::new(0.3, 0.7), 0.0).unwrap(), 1.0);
    assert!(kummer_phi(PsiParams::new(1.0, -2.0), 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_positive_and_decreasing(a in 0.05f64..20.0, c in -25.0f64..25.0, x in 1e-3f64..100.0) {
        let p = PsiParams::new(a, c);
        let v = tricomi_psi(p, x).unwrap();
        let w = tricomi_psi(p, x * 1.05).unwrap();
        prop_assert!(v > 0.0 && w > 0.0);
        prop_assert!(w < v, "psi({a},{c},.) not decreasing at {x}: {v} then {w}");
    }

    #[test]
    fn series_matches_integral(a in 0.1f64..5.0, c in -5.0f64..5.0, x in 0.05f64..1.0) {
        prop_assume!((c - c.round()).abs() > 1e-2);
        let spec = QuadratureSpec::default();
        let p = PsiParams::new(a, c);
        let s = tricomi_psi_path(p, x, PsiPath::Series, &spec).unwrap();
        prop_assume!(s.rel_err_est() <= 1e-11);
        let i = tricomi_psi_path(p, x, PsiPath::Integral, &spec).unwrap();
        prop_assert!(rel(s.value, i.value) <= 1e-9, "{} vs {}", s.value, i.value);
    }
}
