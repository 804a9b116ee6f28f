use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pzeta_core::cosetlike::load_fixture;
use pzeta_core::families::{partition_lattice, subspace_lattice};
use pzeta_core::groups::{coset_lattice, symmetric};
use pzeta_core::lattice::canonical_form;
use pzeta_core::search::enumerate_lattices;
use pzeta_core::{zeta_series, LatticeOptions};

fn zeta(c: &mut Criterion) {
    let opts = LatticeOptions::default();
    for n in [5usize, 6, 7] {
        let l = partition_lattice(n, &opts).unwrap().lattice;
        c.bench_function(&format!("zeta partition:{n}"), |b| b.iter(|| zeta_series(black_box(&l))));
    }
    let l = subspace_lattice(2, 4, &opts).unwrap().lattice;
    c.bench_function("zeta subspace:2,4", |b| b.iter(|| zeta_series(black_box(&l))));
    c.bench_function("coset lattice sym:4", |b| {
        let g = symmetric(4).unwrap();
        b.iter(|| coset_lattice(black_box(&g), &opts).unwrap())
    });
}

fn canonical(c: &mut Criterion) {
    let l = load_fixture("eleven_point").unwrap();
    c.bench_function("canonical form eleven_point", |b| b.iter(|| canonical_form(black_box(&l))));
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [7usize, 8, 9] {
        g.bench_function(format!("n={n}"), |b| b.iter(|| enumerate_lattices(black_box(n)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, zeta, canonical, enumerate);
criterion_main!(benches);
