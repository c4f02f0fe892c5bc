use canform::{contragredient_canonical, factor, jordan_canonical, Field, Polynomial};
use canform_bench::{pair, square};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn jordan(c: &mut Criterion) {
    let mut group = c.benchmark_group("jordan_canonical");
    for (name, field) in [
        ("gf2", Field::Prime(2)),
        ("gf7", Field::Prime(7)),
        ("q", Field::Rationals),
    ] {
        for n in [4, 6, 8] {
            let a = square(field, n, 7);
            group.bench_with_input(BenchmarkId::new(name, n), &a, |b, a| {
                b.iter(|| jordan_canonical(black_box(a)))
            });
        }
    }
    group.finish();
}

fn contra(c: &mut Criterion) {
    let mut group = c.benchmark_group("contragredient_canonical");
    for (name, field) in [("gf3", Field::Prime(3)), ("q", Field::Rationals)] {
        for (m, n) in [(3, 4), (5, 5)] {
            let p = pair(field, m, n, 11);
            group.bench_with_input(BenchmarkId::new(name, format!("{m}x{n}")), &p, |b, p| {
                b.iter(|| contragredient_canonical(black_box(p)))
            });
        }
    }
    group.finish();
}

fn factoring(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    let cases = [
        ("gf2_deg16", "x^16 + x^3 + x + 1", Field::Prime(2)),
        ("gf101_deg8", "x^8 + 3x^5 - x + 7", Field::Prime(101)),
        ("q_deg8", "x^8 - 1", Field::Rationals),
    ];
    for (name, text, field) in cases {
        let f = Polynomial::parse(text, field).unwrap();
        group.bench_function(name, |b| b.iter(|| factor(black_box(&f))));
    }
    group.finish();
}

criterion_group!(benches, jordan, contra, factoring);
criterion_main!(benches);
