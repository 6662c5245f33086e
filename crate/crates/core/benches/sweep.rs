use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use raag_core::census::{census_row, sweep_connected};
use raag_core::splitting::nonsplit_cover_with;
use raag_core::verify::check_euler;
use raag_core::{jsj::jsj, Execution, SimplicialGraph};

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for n in [4usize, 5] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| census_row(n, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_euler_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler_sweep_n5");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                sweep_connected(5, mode, |g| jsj(g).and_then(|j| check_euler(g, &j)).unwrap_or(false))
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_cover(c: &mut Criterion) {
    // 8x8 grid graph: biconnected, many two-edge segments
    let side = 8;
    let idx = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    let grid = SimplicialGraph::labeled(side * side, edges).unwrap();
    let mut group = c.benchmark_group("nonsplit_cover_grid8");
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| nonsplit_cover_with(&grid, mode).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_euler_sweep, bench_cover);
criterion_main!(benches);
