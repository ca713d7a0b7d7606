use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sderange_core::{
    brute_count, count_derangements_b, count_relative_derangements_b, is_derangement_b,
    is_relative_derangement_b, iter_signed_permutations, relative_to_tagged_derangement,
    tagged_derangement_to_relative, EnumerationCursor, Ground,
};

fn closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    for n in [100usize, 1000] {
        group.bench_with_input(BenchmarkId::new("derangements_b", n), &n, |b, &n| {
            b.iter(|| count_derangements_b(black_box(n)))
        });
        group.bench_with_input(BenchmarkId::new("relative_b", n), &n, |b, &n| {
            b.iter(|| count_relative_derangements_b(black_box(n)))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    for n in [5usize, 6, 7] {
        group.bench_with_input(BenchmarkId::new("cursor_both_filters", n), &n, |b, &n| {
            b.iter(|| {
                let mut cursor = EnumerationCursor::new(n, Ground::One);
                let (mut der, mut rel) = (0u64, 0u64);
                while let Some(p) = cursor.next_ref() {
                    der += is_derangement_b(p) as u64;
                    rel += is_relative_derangement_b(p) as u64;
                }
                (der, rel)
            })
        });
        group.bench_with_input(BenchmarkId::new("brute_count_parallel", n), &n, |b, &n| {
            b.iter(|| brute_count(n, Ground::One, false, is_relative_derangement_b).unwrap())
        });
    }
    group.finish();
}

fn bijection(c: &mut Criterion) {
    let inputs: Vec<_> = iter_signed_permutations(6, Ground::One)
        .filter(is_relative_derangement_b)
        .collect();
    c.bench_function("relative_to_tagged_round_trip_n6", |b| {
        b.iter(|| {
            for p in &inputs {
                let d = relative_to_tagged_derangement(p).unwrap();
                black_box(tagged_derangement_to_relative(&d).unwrap());
            }
        })
    });
}

criterion_group!(benches, closed_forms, enumeration, bijection);
criterion_main!(benches);
