use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ramcount_core::pencil::{count_maps_bruteforce, enumerate_pencils, solve_three_point, DEFAULT_BUDGET};
use ramcount_core::{Fe, FiniteField, ProjPoint};

fn enumeration(c: &mut Criterion) {
    let k = FiniteField::prime(7).unwrap();
    c.bench_function("enumerate G(1,3)(F7)", |b| {
        b.iter(|| enumerate_pencils(3, black_box(&k), DEFAULT_BUDGET).unwrap().count())
    });
}

fn census(c: &mut Criterion) {
    let k = FiniteField::new(3, 2).unwrap();
    let lambda = k.gen();
    let pts = [
        (ProjPoint::Finite(Fe::ZERO), 2),
        (ProjPoint::Infinity, 2),
        (ProjPoint::Finite(Fe::ONE), 2),
        (ProjPoint::Finite(lambda), 2),
    ];
    c.bench_function("four simple points over F9", |b| {
        b.iter(|| count_maps_bruteforce(3, black_box(&pts), &k, DEFAULT_BUDGET).unwrap())
    });
    let k = FiniteField::prime(13).unwrap();
    c.bench_function("three-point solver d=10 over F13", |b| {
        b.iter(|| solve_three_point(10, 7, 6, 8, black_box(&k)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = enumeration, census
}
criterion_main!(benches);
