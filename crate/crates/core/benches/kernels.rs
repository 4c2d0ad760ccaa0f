//! Parallel-vs-sequential comparison of the exhaustive kernels.
//!
//! With the default `parallel` feature the work-stealing runs are compared
//! against the same code confined to a single rayon thread; building the
//! bench with `--no-default-features` measures the plain sequential
//! fallback instead.

use centrax::{
    check_fhp, check_formula_r, factor_pairs, fixtures, synthesize_right_formula, Caps,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn single_thread<R: Send>(job: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("pool")
            .install(job)
    }
    #[cfg(not(feature = "parallel"))]
    {
        job()
    }
}

fn bench_formula_check(c: &mut Criterion) {
    let caps = Caps::default();
    let gen = fixtures::chain_meet_semilattice(2).unwrap();
    let phi = synthesize_right_formula(&gen, &caps).unwrap().formula;
    let a = fixtures::power_meet_semilattice(3).unwrap();
    let b = fixtures::power_meet_semilattice(3).unwrap();

    let mut group = c.benchmark_group("formula_check_8x8");
    group.sample_size(10);
    group.bench_function("parallel", |bench| {
        bench.iter(|| assert!(check_formula_r(&phi, &a, &b, &caps).unwrap()))
    });
    group.bench_function("one_thread", |bench| {
        bench.iter(|| single_thread(|| assert!(check_formula_r(&phi, &a, &b, &caps).unwrap())))
    });
    group.finish();
}

fn bench_factor_pairs(c: &mut Criterion) {
    let caps = Caps::default();
    let cube = fixtures::power_meet_semilattice(3).unwrap();

    let mut group = c.benchmark_group("factor_pairs_2^3");
    group.sample_size(10);
    group.bench_function("parallel", |bench| {
        bench.iter(|| assert_eq!(factor_pairs(&cube, &caps).unwrap().len(), 8))
    });
    group.bench_function("one_thread", |bench| {
        bench.iter(|| {
            single_thread(|| assert_eq!(factor_pairs(&cube, &caps).unwrap().len(), 8))
        })
    });
    group.finish();
}

fn bench_fhp(c: &mut Criterion) {
    let caps = Caps::default();
    let a = fixtures::chain_lattice(3).unwrap();
    let b = fixtures::chain_lattice(4).unwrap();

    let mut group = c.benchmark_group("fhp_3x4");
    group.sample_size(10);
    group.bench_function("parallel", |bench| {
        bench.iter(|| assert!(check_fhp(&a, &b, &caps).unwrap().holds()))
    });
    group.bench_function("one_thread", |bench| {
        bench.iter(|| single_thread(|| assert!(check_fhp(&a, &b, &caps).unwrap().holds())))
    });
    group.finish();
}

criterion_group!(benches, bench_formula_check, bench_factor_pairs, bench_fhp);
criterion_main!(benches);
