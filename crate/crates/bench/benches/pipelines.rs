use criterion::{criterion_group, criterion_main, Criterion};
use pcan_bench::{er_sample, erdos_renyi};
use pcan_core::graph::partition;
use pcan_core::pca::symmetric_eigen;
use pcan_core::{pcan, spcan, Matrix, PcanSettings};

fn jacobi(c: &mut Criterion) {
    // Shifted Hilbert matrix: symmetric, well separated spectrum.
    let p = 9;
    let data = (0..p * p)
        .map(|idx| {
            let (i, j) = (idx / p, idx % p);
            1.0 / (i + j + 1) as f64 + if i == j { 1.0 } else { 0.0 }
        })
        .collect();
    let sigma = Matrix::from_vec(p, p, data).unwrap();
    c.bench_function("jacobi/9x9", |b| b.iter(|| symmetric_eigen(&sigma).unwrap()));
}

fn partitioning(c: &mut Criterion) {
    let g = erdos_renyi(800, 0.02, 3);
    c.bench_function("partition/800/K66", |b| b.iter(|| partition(&g, 66, 12, 5).unwrap()));
}

fn embeddings(c: &mut Criterion) {
    let sample = er_sample(20, 400, 0.03, 4);
    let settings = PcanSettings::default();
    let mut group = c.benchmark_group("embed/20x400");
    group.sample_size(10);
    group.bench_function("pcan", |b| b.iter(|| pcan(&sample, &settings).unwrap()));
    group.bench_function("spcan", |b| b.iter(|| spcan(&sample, &settings).unwrap()));
    group.finish();
}

criterion_group!(benches, jacobi, partitioning, embeddings);
criterion_main!(benches);
