use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gkz_bench::{gkz_data, graph_matrix, one_mass_quadrature, point};
use gkz_core::gkz::{kernel_lattice, toric_ideal};
use gkz_core::oracle::quadrature;
use gkz_core::series::evaluate;
use gkz_core::{fixture, run_until, Stage};

fn toric(c: &mut Criterion) {
    for name in ["box", "triangle-3scale", "party-hat"] {
        let (a, _) = graph_matrix(name);
        let lattice = kernel_lattice(&a);
        c.bench_function(&format!("toric ideal/{name}"), |b| b.iter(|| toric_ideal(black_box(&lattice), a.ncols())));
    }
}

fn gkz_stage(c: &mut Criterion) {
    let spec = fixture("triangle-3scale").unwrap();
    c.bench_function("run to gkz/triangle-3scale", |b| b.iter(|| run_until(black_box(&spec), Stage::Gkz)));
}

fn series(c: &mut Criterion) {
    let (_, coeffs) = graph_matrix("triangle-3scale");
    let data = gkz_data("triangle-3scale");
    let s = data.series().remove(0);
    let p = point(&[0.3, 0.4, 0.5], 1.9);
    c.bench_function("F4 series order 30", |b| b.iter(|| evaluate(black_box(&s), &p, &coeffs, 30).unwrap()));

    let (_, coeffs) = graph_matrix("box");
    let data = gkz_data("box");
    let s = data.series().remove(0);
    let p = point(&[0.31, 0.27, 0.29, 0.33], 1.9);
    c.bench_function("3F2 series order 60", |b| b.iter(|| evaluate(black_box(&s), &p, &coeffs, 60).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let spec = one_mass_quadrature();
    let mut group = c.benchmark_group("quadrature");
    group.sample_size(10);
    group.bench_function("one-mass bubble 2D", |b| b.iter(|| quadrature(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, toric, gkz_stage, series, oracle);
criterion_main!(benches);
