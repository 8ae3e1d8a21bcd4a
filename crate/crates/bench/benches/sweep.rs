use criterion::{criterion_group, criterion_main, Criterion};
use cyclocert::vansum::enumerate_minimal_vanishing;
use cyclocert::verify::verify_group;
use cyclocert::GroupKind;

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("GL2 q=13", |b| {
        b.iter(|| verify_group(GroupKind::GL2, 13, 2).unwrap())
    });
    g.bench_function("SL2 q=31", |b| {
        b.iter(|| verify_group(GroupKind::SL2, 31, 2).unwrap())
    });
    g.bench_function("Suzuki q=32", |b| {
        b.iter(|| verify_group(GroupKind::Suzuki, 32, 2).unwrap())
    });
    g.bench_function("vanishing sums k=5 bound 210", |b| {
        b.iter(|| enumerate_minimal_vanishing(5, 210).unwrap())
    });
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
