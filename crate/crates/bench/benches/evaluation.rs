use std::hint::black_box;

use coulomb_bench::{log_points, regime_points, ORDERS};
use coulomb_core::special::{erfcx, tricomi_psi, PsiParams};
use coulomb_core::{mills, vq, vq_prime, DerivMethod, Order, VqMethod};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn router(c: &mut Criterion) {
    let mut g = c.benchmark_group("vq");
    for (name, q, x) in regime_points() {
        let o = Order::new(q).unwrap();
        g.bench_with_input(BenchmarkId::new("auto", name), &(o, x), |b, &(o, x)| {
            b.iter(|| vq(o, black_box(x), None).unwrap())
        });
    }
    let o = Order::new(0.7).unwrap();
    for (label, m) in [("quadrature", VqMethod::Quadrature), ("psi", VqMethod::Psi)] {
        g.bench_function(BenchmarkId::new("method", label), |b| {
            b.iter(|| vq(o, black_box(2.3), Some(m)).unwrap())
        });
    }
    g.finish();
}

fn derivatives(c: &mut Criterion) {
    let mut g = c.benchmark_group("vq_prime");
    let o = Order::new(1.0).unwrap();
    for (label, m) in [
        ("integral", DerivMethod::Integral),
        ("differ", DerivMethod::Differ),
        ("difvq", DerivMethod::Difvq),
    ] {
        g.bench_function(label, |b| {
            b.iter(|| vq_prime(o, black_box(2.0), Some(m)).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let xs = log_points(0.05, 30.0, 100);
    c.bench_function("vq sweep 5x100", |b| {
        b.iter(|| {
            let mut s = 0.0;
            for q in ORDERS {
                let o = Order::new(q).unwrap();
                for &x in &xs {
                    s += vq(o, x, None).unwrap().value;
                }
            }
            s
        })
    });
    c.bench_function("mills sweep 100", |b| {
        b.iter(|| xs.iter().map(|&x| mills(x).unwrap()).sum::<f64>())
    });
    c.bench_function("erfcx sweep 100", |b| {
        b.iter(|| xs.iter().map(|&x| erfcx(x)).sum::<f64>())
    });
    c.bench_function("psi(2.3, -1.2, x) sweep 100", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| tricomi_psi(PsiParams::new(2.3, -1.2), x).unwrap())
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, router, derivatives, sweeps);
criterion_main!(benches);
