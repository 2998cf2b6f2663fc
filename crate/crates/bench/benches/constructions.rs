use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use proxtree_core::construct::{draw_instance, Algorithm};
use proxtree_core::gen::{gen_instance, GenParams};
use proxtree_core::verify::verify_drawing;
use proxtree_core::{BoundMode, Instance, Tree};

fn instance(algo: Algorithm, n: usize) -> Instance {
    let params = match algo {
        Algorithm::Degree5 => return Instance::bare(Tree::path(n)),
        Algorithm::Part5 => GenParams::partition(n, BoundMode::Degree, 5, 3),
        Algorithm::Part4 => GenParams::partition(n, BoundMode::Outdegree, 4, 3),
        Algorithm::Part3 => GenParams::partition(n, BoundMode::Outdegree, 3, 3),
        Algorithm::Cover2 => GenParams::covering(n),
    };
    gen_instance(7, &params).expect("feasible parameters")
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("draw");
    group.sample_size(10);
    for algo in Algorithm::ALL {
        for n in [20usize, 40] {
            let inst = instance(algo, n);
            group.bench_with_input(BenchmarkId::new(algo.name(), n), &inst, |b, inst| {
                b.iter(|| draw_instance(algo, inst, None).unwrap())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for algo in Algorithm::ALL {
        let d = draw_instance(algo, &instance(algo, 40), None).unwrap();
        group.bench_function(algo.name(), |b| b.iter(|| verify_drawing(&d)));
    }
    group.finish();
}

criterion_group!(benches, constructions);
criterion_main!(benches);
