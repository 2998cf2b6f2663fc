use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use proxtree_core::gen::random_points;
use proxtree_core::proximity::{emst, rng};
use proxtree_core::PointSet;

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for n in [50usize, 100, 200] {
        let ps = PointSet::from_points(random_points(n as u64, n, 128)).unwrap();
        group.bench_with_input(BenchmarkId::new("rng", n), &ps, |b, ps| b.iter(|| rng(ps)));
        group.bench_with_input(BenchmarkId::new("emst", n), &ps, |b, ps| b.iter(|| emst(ps)));
    }
    group.finish();
}

criterion_group!(benches, oracles);
criterion_main!(benches);
