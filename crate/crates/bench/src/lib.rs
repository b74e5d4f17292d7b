//! Criterion benchmarks for the pushforward engine and the arithmetic scans.

use std::hint::black_box;

use cayley_core::exactnum::granville_binomial;
use cayley_core::gcdlaws::{four_square_gcd, gcd_of_kind};
use cayley_core::pushforward::{coset_pushforward, coset_pushforward_direct, oracle_pushforward, WeylSumData};
use cayley_core::{GcdKind, Partition};
use criterion::{BenchmarkId, Criterion};

pub fn pushforward(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset_pushforward");
    for parts in [vec![4], vec![8], vec![12], vec![3, 2], vec![6, 3], vec![12, 3]] {
        let p = Partition::new(parts).expect("valid partition");
        group.bench_with_input(BenchmarkId::from_parameter(&p), &p, |b, p| b.iter(|| coset_pushforward(black_box(p))));
    }
    group.finish();

    let mut group = c.benchmark_group("engine_variants");
    group.sample_size(10);
    let p = Partition::pair(5, 3);
    group.bench_function("integer", |b| b.iter(|| coset_pushforward(black_box(&p))));
    group.bench_function("rational", |b| b.iter(|| coset_pushforward_direct(black_box(&p))));
    let data = WeylSumData::new().expect("group data");
    let four = Partition::single(4);
    group.bench_function("weyl_oracle", |b| b.iter(|| oracle_pushforward(&data, black_box(&four))));
    group.finish();
}

pub fn arithmetic(c: &mut Criterion) {
    c.bench_function("gcd_diff(150)", |b| b.iter(|| gcd_of_kind(GcdKind::Diff, black_box(150))));
    c.bench_function("gcd_row(300)", |b| b.iter(|| gcd_of_kind(GcdKind::Row, black_box(300))));
    c.bench_function("granville(1999, 777, 7, 3)", |b| b.iter(|| granville_binomial(black_box(1999), 777, 7, 3)));
    c.bench_function("four_square_gcd(200)", |b| b.iter(|| four_square_gcd(black_box(200))));
}
