use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sfree_bench::{anchor, halfplane, octahedron, rays, square_box, wedge};
use sfree_core::gauge::GaugeFunction;
use sfree_core::{enumerate_integer_points, tilt_to_maximal, verify_validity, SearchBox};

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for r in [2i64, 4, 6] {
        let p = octahedron(r);
        group.bench_with_input(BenchmarkId::new("octahedron", r), &p, |b, p| {
            b.iter(|| enumerate_integer_points(black_box(p), None).unwrap())
        });
    }
    group.finish();
}

fn bench_double_description(c: &mut Criterion) {
    let p = octahedron(3);
    c.bench_function("dd/octahedron", |b| b.iter(|| black_box(&p).generators()));
}

fn bench_tilt(c: &mut Criterion) {
    let s = halfplane();
    let body = wedge();
    let mut group = c.benchmark_group("tilt");
    for h in [3i64, 5, 8] {
        let bx = square_box(h);
        group.bench_with_input(BenchmarkId::new("wedge", h), &bx, |b, bx| {
            b.iter(|| tilt_to_maximal(black_box(&body), &s, bx).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let s = halfplane();
    let f = anchor();
    let rays = rays();
    let psi = GaugeFunction::new(f.clone(), wedge().rows().to_vec()).unwrap();
    let coeffs: Vec<_> = rays.iter().map(|r| psi.eval(r).unwrap()).collect();
    let bx = SearchBox::symmetric(2, 6);
    c.bench_function("verify/three-rays", |b| {
        b.iter(|| verify_validity(black_box(&coeffs), &f, &rays, &s, &bx).unwrap())
    });
}

criterion_group!(benches, bench_enumeration, bench_double_description, bench_tilt, bench_verify);
criterion_main!(benches);
