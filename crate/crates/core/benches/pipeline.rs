//! Sequential vs parallel throughput of the hot loops. The sequential side runs
//! on a one-thread pool, which executes the same code path as a build without
//! the `parallel` feature.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planesect_core::lattice::count_planes;
use planesect_core::points::DEFAULT_SIEVE;
use planesect_core::{covering_plane, enumerate_points, parse_surface, PrimitivePoint};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn bench(c: &mut Criterion) {
    let f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap();
    let pts = enumerate_points(&f, 64, &DEFAULT_SIEVE).unwrap();
    let sample: Vec<PrimitivePoint> = pts.coords().iter().take(2000).map(|&x| PrimitivePoint::from_i64(x).unwrap()).collect();

    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new("enumerate_points_B64", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| enumerate_points(&f, 64, &DEFAULT_SIEVE).unwrap().len()))
        });
        g.bench_with_input(BenchmarkId::new("count_planes_T32", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| count_planes(32).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("covering_planes_2000", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| planesect_core::par::map(&sample, covering_plane).len()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
