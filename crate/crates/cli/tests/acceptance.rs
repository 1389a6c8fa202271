//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p cubeorder-cli --test acceptance`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clap::Parser;
use cubeorder_cli::{Cli, RunConfig, SCHEMA_LINE};
use cubeorder_core::{
    all_orderings, build_layout, build_surface_lists, cache_model, hilbert_decode, hilbert_encode, init_grid,
    morton_decode, morton_encode, morton_refine, pack_surface, run, surface_cache_model, surface_coords,
    unpack_surface, AccessMode, CacheConfig, Coord3, Dims, OrderingSpec, RuleSpec, StencilSpec, SurfaceFilter,
    SurfaceId,
};
use support::{reference_misses, Centers};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn cli_csv(args: &[&str]) -> Result<String, String> {
    let cli = Cli::try_parse_from(std::iter::once("cubeorder").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    let cfg = RunConfig::from_command(&cli.command).map_err(|e| e.to_string())?;
    cfg.execute().map_err(|e| e.to_string())
}

/// Data rows as string fields, after checking the schema line and header.
fn parse_csv(text: &str, header: &str) -> Result<Vec<Vec<String>>, String> {
    let mut lines = text.lines();
    ensure(lines.next() == Some(SCHEMA_LINE), || "missing schema line".into())?;
    let mut rest: Vec<&str> = lines.skip_while(|l| l.starts_with('#')).collect();
    ensure(!rest.is_empty() && rest.remove(0) == header, || format!("header is not '{header}'"))?;
    Ok(rest.iter().map(|l| l.split(',').map(str::to_string).collect()).collect())
}

fn standard(dims: Dims) -> Vec<OrderingSpec> {
    vec![
        OrderingSpec::row_major(dims),
        OrderingSpec::morton(dims, dims.exponent() - 1).unwrap(),
        OrderingSpec::hilbert(dims).unwrap(),
    ]
}

fn ac1_row_major_histogram() -> Outcome {
    let start = Instant::now();
    for (g, offsets, height) in [(1u32, 27usize, 27_000u64), (3, 343, 17_576)] {
        let csv = cli_csv(&["hist", "--ordering", "rowmajor", "--m", "5", "--g", &g.to_string()])?;
        let rows = parse_csv(&csv, "ordering,M,g,offset,count")?;
        ensure(rows.len() == offsets, || format!("g={g}: {} offsets, expected {offsets}", rows.len()))?;
        for r in &rows {
            let count: u64 = r[4].parse().map_err(|e| format!("{e}"))?;
            ensure(count == height, || format!("g={g}: offset {} has count {count}", r[3]))?;
        }
    }
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("27 x 27000 (g=1), 343 x 17576 (g=3) in {took:.2?}"))
}

fn ac2_bijectivity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in 2..=5 {
        let dims = Dims::new(m).unwrap();
        for spec in all_orderings(dims) {
            let mut seen = vec![false; dims.volume() as usize];
            for rmo in 0..dims.volume() {
                let c = dims.from_row_major(rmo);
                let l = spec.encode(c).map_err(|e| e.to_string())?;
                ensure(l < dims.volume() && !seen[l as usize], || format!("{spec} m={m}: index {l} repeated"))?;
                seen[l as usize] = true;
                ensure(spec.decode(l).unwrap() == c, || format!("{spec} m={m}: decode mismatch at {c}"))?;
            }
            for l in 0..dims.volume() {
                ensure(spec.encode(spec.decode(l).unwrap()).unwrap() == l, || format!("{spec}: encode(decode({l}))"))?;
            }
            checked += 1;
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} orderings, m=2..5, in {took:.2?}"))
}

fn ac3_hilbert_contract() -> Outcome {
    for m in 2..=4 {
        let dims = Dims::new(m).unwrap();
        let top = dims.side() - 1;
        ensure(hilbert_decode(0, dims).unwrap() == Coord3::default(), || format!("m={m}: start"))?;
        ensure(hilbert_encode(Coord3::default(), dims).unwrap() == 0, || format!("m={m}: start index"))?;
        ensure(hilbert_decode(dims.volume() - 1, dims).unwrap() == Coord3::new(top, top, top), || {
            format!("m={m}: end")
        })?;
        let mut prev = hilbert_decode(0, dims).unwrap();
        for l in 1..dims.volume() {
            let c = hilbert_decode(l, dims).unwrap();
            ensure(prev.manhattan(&c) == 1, || format!("m={m}: step {prev} -> {c} at {l}"))?;
            prev = c;
        }
    }
    Ok("endpoints (0,0,0)..(M-1,M-1,M-1) and unit steps for m=2..4".into())
}

fn ac4_morton_recurrence() -> Outcome {
    let mut n = 0u64;
    for m in 2..=5 {
        let dims = Dims::new(m).unwrap();
        for r in 1..m {
            for l in 0..dims.volume() {
                let direct = morton_encode(morton_decode(l, dims, r - 1).unwrap(), dims, r).unwrap();
                let refined = morton_refine(l, dims, r).unwrap();
                ensure(direct == refined, || format!("m={m} r={r} l={l}: {refined} != {direct}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} indices agree"))
}

fn ac5_cache_oracle() -> Outcome {
    let start = Instant::now();
    let dims = Dims::new(3).unwrap();
    let specs = [
        OrderingSpec::row_major(dims),
        OrderingSpec::morton(dims, 1).unwrap(),
        OrderingSpec::morton(dims, 2).unwrap(),
        OrderingSpec::hilbert(dims).unwrap(),
    ];
    let mut configs = 0;
    for spec in specs {
        let layout = build_layout(spec).unwrap();
        for g in [1, 2] {
            for b in [1, 2, 4] {
                for c in [1, 2, 8, 64] {
                    let s = cache_model(&layout, StencilSpec::new(g).unwrap(), CacheConfig::new(b, c).unwrap())
                        .map_err(|e| e.to_string())?;
                    let (misses, _) = reference_misses(&spec, g, b, c as usize, Centers::Interior, false);
                    ensure(s.misses == misses, || format!("{spec} g={g} b={b} c={c}: {} vs {misses}", s.misses))?;
                    configs += 1;
                }
            }
        }
    }
    let took = within(Duration::from_secs(120), start)?;
    Ok(format!("{configs} configurations match the reference in {took:.2?}"))
}

fn ac6_compulsory_floor() -> Outcome {
    let mut runs = 0;
    for m in [3, 4, 5] {
        let dims = Dims::new(m).unwrap();
        for spec in all_orderings(dims) {
            let layout = build_layout(spec).unwrap();
            for b in [1, 8] {
                let c = dims.volume() / b;
                let s = cache_model(&layout, StencilSpec::new(1).unwrap(), CacheConfig::new(b, c).unwrap()).unwrap();
                ensure(s.misses == dims.volume() / b, || format!("{spec} b={b}: {} misses", s.misses))?;
                runs += 1;
            }
        }
    }
    Ok(format!("nmisses == M^3/b in {runs} runs over M=8,16,32"))
}

fn ac7_surface_trend() -> Outcome {
    let dims = Dims::new(6).unwrap();
    let stencil = StencilSpec::new(1).unwrap();
    let cache = CacheConfig::new(8, 512).unwrap();
    let misses = |spec: OrderingSpec| -> Vec<u64> {
        let layout = build_layout(spec).unwrap();
        SurfaceId::ALL
            .iter()
            .map(|&s| {
                surface_cache_model(&layout, stencil, cache, SurfaceFilter::Surface(s), AccessMode::CenterOnly)
                    .unwrap()
                    .misses
            })
            .collect()
    };
    let rm = misses(OrderingSpec::row_major(dims));
    let (rc_max, sr_min) = (rm[0].max(rm[1]), rm[4].min(rm[5]));
    ensure(sr_min >= 4 * rc_max, || format!("row-major sr {sr_min} vs rc {rc_max}"))?;
    let h = misses(OrderingSpec::hilbert(dims).unwrap());
    let (lo, hi) = (*h.iter().min().unwrap(), *h.iter().max().unwrap());
    ensure(hi <= 2 * lo, || format!("hilbert surface misses {h:?}"))?;
    Ok(format!(
        "row-major sr/rc = {:.2}; hilbert max/min = {:.2} ({h:?})",
        sr_min as f64 / rc_max as f64,
        hi as f64 / lo as f64
    ))
}

fn ac8_layout_independence() -> Outcome {
    for m in [3, 4, 5] {
        let dims = Dims::new(m).unwrap();
        for g in [1, 2] {
            let rule = RuleSpec::default_for(g).unwrap();
            let mut finals = Vec::new();
            for spec in standard(dims) {
                let layout = build_layout(spec).unwrap();
                let out = run(init_grid(&layout, 0.3, 17).unwrap(), &layout, &rule, 10).unwrap();
                finals.push((spec, out.grid.to_row_major(&layout)));
            }
            for (spec, cells) in &finals[1..] {
                ensure(cells == &finals[0].1, || format!("M={} g={g}: {spec} differs from row-major", dims.side()))?;
            }
        }
    }
    Ok("bit-identical after 10 steps for M=8,16,32, g=1,2".into())
}

fn ac9_halo() -> Outcome {
    let mut cases = 0;
    for m in [2, 3, 4] {
        let dims = Dims::new(m).unwrap();
        let side = dims.side();
        // 2g < M rules out g = 2 at M = 4.
        for g in [1u32, 2].into_iter().filter(|&g| 2 * g < side) {
            for spec in standard(dims) {
                let layout = build_layout(spec).unwrap();
                let lists = build_surface_lists(&layout, g).unwrap();
                let mut grid = init_grid(&layout, 0.5, 3).unwrap();
                let original = grid.clone();
                for s in SurfaceId::ALL {
                    ensure(lists.get(s).len() as u32 == g * side * side, || format!("{spec} {s}: length"))?;
                    let coords: BTreeSet<Coord3> = surface_coords(&layout, &lists, s).into_iter().collect();
                    let expected: BTreeSet<Coord3> = support::all_coords(side)
                        .filter(|c| {
                            let (v, front) = match s {
                                SurfaceId::RcFront => (c.k, true),
                                SurfaceId::RcBack => (c.k, false),
                                SurfaceId::CsFront => (c.i, true),
                                SurfaceId::CsBack => (c.i, false),
                                SurfaceId::SrFront => (c.j, true),
                                SurfaceId::SrBack => (c.j, false),
                            };
                            if front {
                                v < g
                            } else {
                                v >= side - g
                            }
                        })
                        .collect();
                    ensure(coords == expected, || format!("{spec} {s} g={g}: coverage"))?;
                    let buf = pack_surface(&grid, &lists, s).unwrap();
                    unpack_surface(&buf, &lists, &mut grid).unwrap();
                    ensure(grid == original, || format!("{spec} {s}: roundtrip changed the grid"))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (ordering, M, g) cases; g=2 skipped at M=4 where 2g >= M"))
}

fn ac10_bench_stencil() -> Outcome {
    let start = Instant::now();
    let csv = cli_csv(&[
        "bench-stencil",
        "--ordering",
        "rowmajor,morton,hilbert",
        "--m",
        "6,7",
        "--g",
        "1,2",
        "--iterations",
        "10",
        "--repeats",
        "10",
    ])?;
    let took = within(Duration::from_secs(600), start)?;
    ensure(csv.lines().nth(1).is_some_and(|l| l.starts_with("# clock=monotonic resolution_ns=")), || {
        "missing clock metadata".into()
    })?;
    let rows = parse_csv(&csv, "ordering,M,g,iterations,mean_time_per_update_s,std_dev_s")?;
    ensure(rows.len() == 12, || format!("{} rows, expected 12", rows.len()))?;
    let mut summary = Vec::new();
    for r in &rows {
        ensure(r.len() == 6 && r[3] == "10", || format!("malformed row {r:?}"))?;
        let mean: f64 = r[4].parse().map_err(|e| format!("{e}"))?;
        let sd: f64 = r[5].parse().map_err(|e| format!("{e}"))?;
        ensure(mean > 0.0 && mean.is_finite() && sd >= 0.0 && sd.is_finite(), || format!("bad timing {r:?}"))?;
        summary.push(format!("{}/M={}/g={}: {:.2}ns", r[0], r[1], r[2], mean * 1e9));
    }
    println!("    {}", summary.join("\n    "));
    Ok(format!("12 rows in {took:.1?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1  row-major histogram identity", ac1_row_major_histogram),
        ("AC2  ordering bijectivity", ac2_bijectivity),
        ("AC3  Hilbert endpoints and continuity", ac3_hilbert_contract),
        ("AC4  Morton level recurrence", ac4_morton_recurrence),
        ("AC5  cache model vs reference LRU", ac5_cache_oracle),
        ("AC6  compulsory-miss floor", ac6_compulsory_floor),
        ("AC7  surface miss trend", ac7_surface_trend),
        ("AC8  gol3d layout independence", ac8_layout_independence),
        ("AC9  halo sizing, coverage, roundtrip", ac9_halo),
        ("AC10 bench-stencil protocol", ac10_bench_stencil),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
