use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mvforge_core::eigenhopf::{build_figure1, kernel_witness};
use mvforge_core::finitemv::{hopfian_report, smith_invariants, FiniteMV};
use mvforge_core::fsb::BratteliDiagram;
use mvforge_core::mcnaughton::{cube, denominator_census, from_term, random_term};
use mvforge_core::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn term_functions(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let terms: Vec<_> = (0..16).map(|_| random_term(&mut rng, 2, 4)).collect();
    c.bench_function("from_term n=2 depth=4 (16 terms)", |b| {
        b.iter(|| {
            for t in &terms {
                black_box(from_term(t, 2).unwrap());
            }
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs: Vec<_> = (0..8)
        .map(|_| {
            (from_term(&random_term(&mut rng, 2, 4), 2).unwrap(), from_term(&random_term(&mut rng, 2, 4), 2).unwrap())
        })
        .collect();
    c.bench_function("mv_plus with refinement (8 pairs)", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(x.mv_plus(y).unwrap());
            }
        })
    });
}

fn census(c: &mut Criterion) {
    let k = cube(2).unwrap();
    c.bench_function("denominator census [0,1]^2 b=1..12", |b| {
        b.iter(|| (1..=12).map(|d| denominator_census(&k, d)).sum::<usize>())
    });
}

fn diagram(c: &mut Criterion) {
    c.bench_function("bratteli build depth 16", |b| b.iter(|| BratteliDiagram::build(black_box(16)).unwrap()));
}

fn finite(c: &mut Criterion) {
    let a = FiniteMV::parse("L4xL3xL2").unwrap();
    c.bench_function("hopfian report L4xL3xL2", |b| b.iter(|| hopfian_report(&a).unwrap()));
    let m: Vec<Vec<BigInt>> = [[2, 4, 4, 1], [-6, 6, 12, 3], [10, -4, -16, 5], [1, 2, 3, 7]]
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    c.bench_function("smith invariants 4x4", |b| b.iter(|| smith_invariants(black_box(&m))));
}

fn eigen(c: &mut Criterion) {
    let data = build_figure1();
    c.bench_function("eigen kernel witness", |b| b.iter(|| kernel_witness(&data).unwrap()));
}

criterion_group!(benches, term_functions, census, diagram, finite, eigen);
criterion_main!(benches);
