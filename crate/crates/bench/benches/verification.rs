use coulomb_core::verifier::{run_suite, Grid, RunConfig, Suite};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for s in Suite::ALL {
        for parallel in [false, true] {
            let mut cfg = RunConfig::new(vec![s], Grid::default());
            cfg.parallel = parallel;
            let id = BenchmarkId::new(s.name(), if parallel { "parallel" } else { "serial" });
            g.bench_with_input(id, &cfg, |b, cfg| b.iter(|| run_suite(cfg).unwrap()));
        }
    }
    g.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
