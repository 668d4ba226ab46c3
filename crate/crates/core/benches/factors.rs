use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liftspin_core::lfactors::spinor_factor;
use liftspin_core::satake::miyawaki_satake;
use liftspin_core::verify::{run_symbolic_suite, Case, IdentityId, Mutation};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![("sequential", pool(1)), ("parallel", pool(0))]
}

fn main_theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("main_theorem");
    group.sample_size(10);
    let cases: Vec<Case> = (2..=5)
        .map(|n| Case {
            id: IdentityId::MainTheorem,
            n,
            k: 10,
        })
        .collect();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "n=2..5"), |b| {
            b.iter(|| pool.install(|| run_symbolic_suite(&cases, &Mutation::None).unwrap()))
        });
    }
    group.finish();
}

fn spinor_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("spinor_series");
    group.sample_size(10);
    let lhs = spinor_factor(&miyawaki_satake(3, 10).unwrap()).unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "n=3 degree 32"), |b| {
            b.iter(|| pool.install(|| lhs.expand().unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, main_theorem, spinor_expansion);
criterion_main!(benches);
