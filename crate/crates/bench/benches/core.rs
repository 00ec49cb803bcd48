use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quiverlab_bench::{doubled_cycle, path};
use quiverlab_core::{
    admissible_coloring, canonical_form, cluster_variable, data, enumerate_class, search_g2r,
    ClassCaps, IceQuiver, MutationSequence,
};

fn mutation(c: &mut Criterion) {
    let framed = IceQuiver::frame(&doubled_cycle(12));
    c.bench_function("mutate framed n=12", |b| b.iter(|| black_box(&framed).mutate(3).unwrap()));
    let seq: Vec<usize> = (0..100).map(|i| (i * 7) % 12).collect();
    let p = path(12);
    c.bench_function("mutate path n=12 x100", |b| b.iter(|| black_box(&p).mutate_seq(&seq).unwrap()));
}

fn canonical(c: &mut Criterion) {
    let b = doubled_cycle(10);
    c.bench_function("canonical form n=10", |bch| bch.iter(|| canonical_form(black_box(&b)).unwrap()));
}

fn search(c: &mut Criterion) {
    let qce = data::qce();
    c.bench_function("g2r search qce", |b| b.iter(|| search_g2r(black_box(&qce), 6).unwrap()));
}

fn class(c: &mut Criterion) {
    let d5 = path(5);
    c.bench_function("class of A5", |b| b.iter(|| enumerate_class(black_box(&d5), ClassCaps::default()).unwrap()));
}

fn coloring(c: &mut Criterion) {
    let b = doubled_cycle(12);
    c.bench_function("colouring n=12", |bch| bch.iter(|| admissible_coloring(black_box(&b)).unwrap()));
}

fn laurent(c: &mut Criterion) {
    let p = path(4);
    let seq: MutationSequence = "1,2,3,4,1,2".parse().unwrap();
    c.bench_function("cluster variable A4 depth 6", |b| {
        b.iter(|| cluster_variable(black_box(&p), &seq).unwrap())
    });
}

criterion_group!(benches, mutation, canonical, search, class, coloring, laurent);
criterion_main!(benches);
