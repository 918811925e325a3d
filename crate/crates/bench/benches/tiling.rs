use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use loosehc::constructions::{make_complete, random_binomial};
use loosehc::l29::L29Instance;
use loosehc::regularity::RegularityMode;
use loosehc::tiling::fractional::rat;
use loosehc::tiling::l29_search::find_l29_tiling;
use loosehc::tiling::loose_tiling::{path_tile, PathTileOptions};
use loosehc::tiling::mtiling::max_m_tiling;
use loosehc::tiling::tight::greedy_tight_path;

fn m_tiling(c: &mut Criterion) {
    let mut g = c.benchmark_group("m-tiling");
    for n in [16usize, 24] {
        let h = make_complete(n);
        g.bench_function(format!("complete-n{}", n), |b| {
            b.iter(|| max_m_tiling(black_box(&h), 50_000_000).unwrap())
        });
    }
    g.finish();
}

fn fractional(c: &mut Criterion) {
    let instances: Vec<L29Instance> = (0..16).map(L29Instance::random).collect();
    c.bench_function("l29-staged-search-x16", |b| {
        b.iter(|| {
            for inst in &instances {
                find_l29_tiling(black_box(inst)).unwrap();
            }
        })
    });
}

fn tight_path(c: &mut Criterion) {
    let h = random_binomial(36, 0.12, 5).unwrap();
    c.bench_function("greedy-tight-path-n36", |b| {
        b.iter(|| greedy_tight_path(black_box(&h), rat(1, 10)))
    });
}

fn path_tiling(c: &mut Criterion) {
    let h = make_complete(48);
    let opts = PathTileOptions {
        mode: RegularityMode::Exhaustive,
        seed: 3,
        ..Default::default()
    };
    let mut g = c.benchmark_group("path-tiling");
    g.sample_size(10);
    g.bench_function("complete-n48", |b| {
        b.iter(|| path_tile(black_box(&h), &opts).unwrap())
    });
    g.finish();
}

criterion_group!(benches, m_tiling, fractional, tight_path, path_tiling);
criterion_main!(benches);
