use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gamma_mu::{composition_matrix, finite_section_norm, gamma_matrix, hausdorff_matrix, Measure};
use gamma_mu_bench::fixture_measures;
use std::hint::black_box;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_matrix");
    for (name, mu) in fixture_measures() {
        for n in [64, 256] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| gamma_matrix(black_box(&mu), n))
            });
        }
    }
    group.finish();

    let lebesgue = Measure::lebesgue();
    c.bench_function("hausdorff_matrix/lebesgue/256", |b| {
        b.iter(|| hausdorff_matrix(black_box(&lebesgue), 256))
    });
    c.bench_function("composition_matrix/0.3/256", |b| {
        b.iter(|| composition_matrix(black_box(0.3), 256))
    });
}

fn sections(c: &mut Criterion) {
    let mut group = c.benchmark_group("finite_section_norm");
    group.sample_size(10);
    let lebesgue = Measure::lebesgue();
    for n in [64, 256] {
        group.bench_with_input(BenchmarkId::new("lebesgue", n), &n, |b, &n| {
            b.iter(|| finite_section_norm(black_box(&lebesgue), n))
        });
    }
    group.finish();
}

criterion_group!(benches, build, sections);
criterion_main!(benches);
