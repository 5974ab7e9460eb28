use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use trivext_core::algebra::build_algebra;
use trivext_core::corpus::{entry, load};
use trivext_core::criteria::{graded_cartan, hhdim_verdict_for_algebra, VerdictOptions};
use trivext_core::hochschild::{hh_dims, HHOptions};
use trivext_core::quiver::parse_presentation;
use trivext_core::trivial_ext::{graded_trivial_extension, trivial_extension};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for name in ["local_xy", "five_vertex_graded"] {
        let source = entry(name).unwrap().source;
        g.bench_function(name, |b| {
            b.iter(|| build_algebra(&parse_presentation(black_box(source)).unwrap()).unwrap())
        });
    }
    g.finish();
}

fn extension(c: &mut Criterion) {
    let mut g = c.benchmark_group("trivial_extension");
    for name in ["cyclic3_rad2", "five_vertex_graded"] {
        let a = load(name);
        g.bench_function(name, |b| b.iter(|| trivial_extension(black_box(&a))));
    }
    let t = trivial_extension(&load("dual_numbers")).algebra;
    g.bench_function("T(dual_numbers)", |b| b.iter(|| trivial_extension(black_box(&t))));
    g.finish();
}

fn verdict(c: &mut Criterion) {
    let mut g = c.benchmark_group("verdict");
    let extend = VerdictOptions { extend: true };
    for name in ["local_xy", "cyclic3_rad2", "a2_path"] {
        let a = load(name);
        g.bench_function(name, |b| b.iter(|| hhdim_verdict_for_algebra(black_box(&a), extend)));
    }
    let t = graded_trivial_extension(&load("five_vertex_graded")).unwrap().algebra;
    g.bench_function("graded_cartan T(five_vertex_graded)", |b| b.iter(|| graded_cartan(black_box(&t)).unwrap()));
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("hh_dims");
    g.sample_size(10);
    let t = trivial_extension(&load("cyclic2_rad2")).algebra;
    let options = HHOptions::default();
    g.bench_function("T(cyclic2_rad2) n<=3", |b| b.iter(|| hh_dims(black_box(&t), 3, &options).unwrap()));
    let a = load("local_xy");
    g.bench_function("local_xy n<=4", |b| b.iter(|| hh_dims(black_box(&a), 4, &options).unwrap()));
    g.finish();
}

criterion_group!(benches, build, extension, verdict, homology);
criterion_main!(benches);
