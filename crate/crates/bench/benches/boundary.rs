use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gamma_mu::{apply_gamma_boundary, hp_norm, OperatorHandle};
use gamma_mu_bench::{fixture_boundary, fixture_measures, fixture_polynomial, grid};
use std::hint::black_box;

fn norms(c: &mut Criterion) {
    let f = fixture_polynomial(64);
    let mut group = c.benchmark_group("hp_norm");
    for m in [1024, 8192] {
        let g = grid(m);
        group.bench_with_input(BenchmarkId::new("p1", m), &g, |b, g| {
            b.iter(|| hp_norm(black_box(&f), 1.0, g))
        });
    }
    group.finish();
}

fn boundary_action(c: &mut Criterion) {
    let f = fixture_boundary(16);
    let mut group = c.benchmark_group("apply_gamma_boundary");
    group.sample_size(10);
    for (name, mu) in fixture_measures() {
        let h = OperatorHandle::new(mu, 32, grid(256)).expect("valid handle");
        group.bench_function(name, |b| b.iter(|| apply_gamma_boundary(black_box(&h), &f)));
    }
    group.finish();
}

criterion_group!(benches, norms, boundary_action);
criterion_main!(benches);
