//! Sweep throughput: the rayon-parallel reduction against a single worker.
//!
//! The reduction is deterministic in both modes, so the benchmark is a pure
//! scheduling comparison. Run with `cargo bench --bench sweeps`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rectcon::{mu_estimate, mu_polyhedral_exact, random_polygons, regular_hexagon, Norm,
              SearchConfig};

fn bench_config() -> SearchConfig {
    SearchConfig {
        theta_resolution: 512,
        phi_resolution: 64,
        t_grid: 256,
        ..SearchConfig::default()
    }
}

/// Runs `f` on a dedicated pool with the requested worker count, leaving the
/// global pool untouched.
fn on_pool<T: Send>(threads: usize, f: impl Fn() -> T + Send + Sync) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("pool construction succeeds")
        .install(f)
}

fn sweep_benches(c: &mut Criterion) {
    let euclid = Norm::euclidean(2).expect("dimension 2 is valid");
    let hexagon = regular_hexagon();
    let polygon = random_polygons(1, 42).expect("seeded polygon")[0].clone();
    let config = bench_config();

    let mut group = c.benchmark_group("mu_sweep");
    group.sample_size(10);
    for threads in [1usize, rayon::current_num_threads().max(2)] {
        group.bench_with_input(
            BenchmarkId::new("euclidean", threads),
            &threads,
            |b, &t| b.iter(|| on_pool(t, || mu_estimate(&euclid, &config).unwrap().value)),
        );
        group.bench_with_input(
            BenchmarkId::new("hexagon", threads),
            &threads,
            |b, &t| b.iter(|| on_pool(t, || mu_estimate(&hexagon, &config).unwrap().value)),
        );
        group.bench_with_input(
            BenchmarkId::new("random-polygon", threads),
            &threads,
            |b, &t| b.iter(|| on_pool(t, || mu_estimate(&polygon, &config).unwrap().value)),
        );
    }
    group.finish();

    let mut exact = c.benchmark_group("mu_exact");
    exact.sample_size(20);
    for threads in [1usize, rayon::current_num_threads().max(2)] {
        exact.bench_with_input(
            BenchmarkId::new("random-polygon", threads),
            &threads,
            |b, &t| b.iter(|| on_pool(t, || mu_polyhedral_exact(&polygon, &config).unwrap().value)),
        );
    }
    exact.finish();
}

criterion_group!(benches, sweep_benches);
criterion_main!(benches);
