use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use factorum_core::catenary::catenary;
use factorum_core::distance::{rigid_distance, DistanceKind};
use factorum_core::factorization::length_profile;
use factorum_core::matrix::{snf, IntMatrix};
use factorum_core::zero_sum::{davenport, FiniteAbelianGroup, DEFAULT_GROUP_CAP};
use factorum_core::{ExplorationBudget, Presentation, PresentedSemigroup};

fn handle(rels: &[(&str, &str)], len: usize) -> PresentedSemigroup {
    let p = Presentation::new(&["a", "b", "c", "d", "e"], rels).unwrap();
    PresentedSemigroup::with_budget(p, ExplorationBudget::new(len, 1_000_000).unwrap()).unwrap()
}

fn presented(c: &mut Criterion) {
    c.bench_function("lengths abc=de (abc)^3", |b| {
        b.iter(|| {
            // fresh handle so the ball cache is cold
            let h = handle(&[("a b c", "d e")], 12);
            let w = h.word("a b c a b c a b c").unwrap();
            black_box(length_profile(&h, &w))
        })
    });
    c.bench_function("catenary d_p ab=cd (ab)^3", |b| {
        b.iter(|| {
            let h = handle(&[("a b", "c d")], 8);
            let w = h.word("a b a b a b").unwrap();
            black_box(catenary(&h, &w, DistanceKind::Permutable))
        })
    });
}

fn distances(c: &mut Criterion) {
    let z: Vec<u8> = (0..40).map(|i| (i * 7 % 5) as u8).collect();
    let zp: Vec<u8> = (0..40).map(|i| (i * 3 % 5) as u8).collect();
    c.bench_function("rigid distance 40x40", |b| {
        b.iter(|| black_box(rigid_distance(&z, &zp).cost))
    });
}

fn zero_sum(c: &mut Criterion) {
    let g = FiniteAbelianGroup::new(&[3, 6]).unwrap();
    c.bench_function("davenport C3+C6", |b| {
        b.iter(|| black_box(davenport(&g, None, DEFAULT_GROUP_CAP).unwrap()))
    });
}

fn matrices(c: &mut Criterion) {
    let a = IntMatrix::parse("4 -7 12 3; 2 9 -5 8; 6 1 0 -11; -3 5 7 2").unwrap();
    c.bench_function("snf 4x4", |b| b.iter(|| black_box(snf(&a).unwrap())));
}

criterion_group!(benches, presented, distances, zero_sum, matrices);
criterion_main!(benches);
