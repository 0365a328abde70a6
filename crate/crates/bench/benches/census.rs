use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kstirling::{
    enumerate_forests_n, enumerate_k_stirling, gamma_census_bar_hat, gamma_prime_map,
    run_suite, zeta, Limits, Suite,
};

fn words(c: &mut Criterion) {
    let l = Limits::default();
    c.bench_function("enumerate words n=6 k=2", |b| {
        b.iter(|| enumerate_k_stirling(black_box(6), 2, &l).unwrap().count())
    });
    c.bench_function("zeta over n=5 k=3", |b| {
        b.iter(|| {
            enumerate_k_stirling(5, 3, &l)
                .unwrap()
                .map(|w| zeta(&w).trees.len())
                .sum::<usize>()
        })
    });
}

fn forests(c: &mut Criterion) {
    let l = Limits::default();
    c.bench_function("enumerate forests n=5 k=3", |b| {
        b.iter(|| enumerate_forests_n(black_box(5), 3, &l).unwrap().len())
    });
    c.bench_function("census n=5 k=3", |b| {
        b.iter(|| gamma_census_bar_hat(black_box(5), 3, &l).unwrap())
    });
    let fs = enumerate_forests_n(5, 2, &l).unwrap();
    c.bench_function("gamma prime over n=5 k=2", |b| {
        b.iter(|| fs.iter().map(|f| gamma_prime_map(f).unwrap().marks.len()).sum::<usize>())
    });
}

fn suites(c: &mut Criterion) {
    let l = Limits::default();
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("theorems n<=4 k<=3", |b| {
        b.iter(|| run_suite(4, 3, &[Suite::Theorems], &l).unwrap().len())
    });
    g.finish();
}

criterion_group!(benches, words, forests, suites);
criterion_main!(benches);
