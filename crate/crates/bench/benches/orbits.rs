use std::hint::black_box;

use circint::{
    cross_verify, cyclotomic_polynomial, field_gaussian, field_quadratic, field_rationals, orbit_partition,
    oracle_is_integral, CirculantSpec, Limits, SweepMode,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn partitions(c: &mut Criterion) {
    let limits = Limits::default();
    let qi = field_gaussian();
    let sqrt2 = field_quadratic(2).unwrap();
    c.bench_function("orbit_partition 2520 over Q", |b| {
        b.iter(|| orbit_partition(black_box(2520), &field_rationals(), &limits).unwrap())
    });
    c.bench_function("orbit_partition 2520 over Q(i)", |b| {
        b.iter(|| orbit_partition(black_box(2520), &qi, &limits).unwrap())
    });
    c.bench_function("orbit_partition 2520 over Q(sqrt 2)", |b| {
        b.iter(|| orbit_partition(black_box(2520), &sqrt2, &limits).unwrap())
    });
}

fn exact(c: &mut Criterion) {
    let limits = Limits::default();
    c.bench_function("cyclotomic_polynomial 1155", |b| {
        b.iter(|| cyclotomic_polynomial(black_box(1155), &limits).unwrap())
    });
    let spec = CirculantSpec::new(60, (1..60).filter(|s| s % 7 != 3)).unwrap();
    c.bench_function("oracle_is_integral n=60 over Q(i)", |b| {
        b.iter(|| oracle_is_integral(black_box(&spec), &field_gaussian(), &limits).unwrap())
    });
    c.bench_function("cross_verify n=12 exhaustive over Q(i)", |b| {
        b.iter(|| cross_verify(black_box(12), &field_gaussian(), SweepMode::Exhaustive, &limits).unwrap())
    });
}

criterion_group!(benches, partitions, exact);
criterion_main!(benches);
