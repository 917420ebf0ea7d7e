use std::hint::black_box;

use braidshuffle::braid::ybe_check;
use braidshuffle::exterior::base_braiding;
use braidshuffle::products::{check_twisted_bialgebra, quasi_shuffle, quasi_shuffle_oracle};
use braidshuffle_bench::{all_words, exterior, power_sum};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn quasi(c: &mut Criterion) {
    let mut g = c.benchmark_group("quasi_shuffle");
    for len in [2, 3, 4] {
        let x = all_words(2, len);
        // a fresh spec per iteration so the memo starts empty
        g.bench_with_input(BenchmarkId::new("engine_cold", len), &x, |b, x| {
            b.iter(|| quasi_shuffle(&power_sum(2), black_box(x), black_box(x)).unwrap())
        });
        let a = power_sum(2);
        g.bench_with_input(BenchmarkId::new("oracle", len), &x, |b, x| {
            b.iter(|| quasi_shuffle_oracle(&a, black_box(x), black_box(x)).unwrap())
        });
    }
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    for n in [2, 3, 4] {
        let s = base_braiding(n);
        g.bench_with_input(BenchmarkId::new("ybe_dense", n), &s, |b, s| b.iter(|| ybe_check(black_box(s))));
    }
    g.bench_function("bialgebra_exterior2_deg3", |b| b.iter(|| check_twisted_bialgebra(&exterior(2), 3)));
    g.finish();
}

criterion_group!(benches, quasi, checks);
criterion_main!(benches);
