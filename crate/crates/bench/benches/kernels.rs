use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use cubeorder_bench::standard_layouts;
use cubeorder_core::{
    build_surface_lists, cache_model, init_grid, pack_into, step, CacheConfig, RuleSpec, StencilSpec, SurfaceId,
};

fn stencil_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("gol3d_step");
    group.sample_size(10);
    for layout in standard_layouts(6) {
        for g in [1, 2] {
            let rule = RuleSpec::default_for(g).unwrap();
            let grid = init_grid(&layout, 0.3, 1).unwrap();
            let interior = rule.stencil.interior_count(layout.dims());
            group.throughput(Throughput::Elements(interior));
            group.bench_with_input(BenchmarkId::new(layout.spec().to_string(), g), &grid, |b, grid| {
                b.iter(|| black_box(step(grid, &layout, &rule).unwrap()))
            });
        }
    }
    group.finish();
}

fn halo_pack(c: &mut Criterion) {
    let mut group = c.benchmark_group("halo_pack");
    for layout in standard_layouts(7) {
        let lists = build_surface_lists(&layout, 1).unwrap();
        let grid = init_grid(&layout, 0.3, 1).unwrap();
        let mut buf = vec![0u8; lists.surface_len()];
        group.throughput(Throughput::Elements(buf.len() as u64));
        for s in SurfaceId::ALL {
            group.bench_function(BenchmarkId::new(layout.spec().to_string(), s), |b| {
                b.iter(|| {
                    pack_into(&grid, &lists, s, &mut buf).unwrap();
                    black_box(&buf);
                })
            });
        }
    }
    group.finish();
}

fn lru_model(c: &mut Criterion) {
    let mut group = c.benchmark_group("cache_model");
    group.sample_size(10);
    for layout in standard_layouts(5) {
        group.bench_function(layout.spec().to_string(), |b| {
            b.iter(|| {
                cache_model(&layout, StencilSpec::new(1).unwrap(), CacheConfig::new(8, 64).unwrap()).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, stencil_step, halo_pack, lru_model);
criterion_main!(benches);
