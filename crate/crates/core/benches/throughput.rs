use std::thread::available_parallelism;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use omnilife::catalog::verify_catalog;
use omnilife::catsearch::{search_catalysts, CatalystSpec, SearchConfig};
use omnilife::census::{random_soup, run_census, SoupConfig, DEFAULT_DENSITY};
use omnilife::parallel::Parallelism;
use omnilife::{step, step_reference, Pattern, Rect, Topology, Torus};

fn schedules() -> Vec<(String, Parallelism)> {
    let n = available_parallelism().map_or(4, |n| n.get()).max(2);
    vec![
        ("sequential".to_string(), Parallelism::Sequential),
        (format!("threads-{n}"), Parallelism::Threads(n)),
    ]
}

fn census(c: &mut Criterion) {
    let cfg = SoupConfig {
        seed: 1,
        soup_width: 16,
        soup_height: 16,
        density: DEFAULT_DENSITY,
        torus: Torus::new(64, 64).unwrap(),
        max_gens: 1 << 15,
        soup_count: 200,
    };
    let mut g = c.benchmark_group("census-200");
    g.sample_size(10);
    for (name, par) in schedules() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_census(&cfg, par).unwrap())
        });
    }
    g.finish();
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify-catalog");
    for (name, par) in schedules() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_catalog(par))
        });
    }
    g.finish();
}

fn catsearch(c: &mut Criterion) {
    let bee = omnilife::catalog::by_name("queen bee")
        .unwrap()
        .pattern()
        .unwrap();
    let block = Pattern::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
    let cfg = SearchConfig {
        active_region: bee,
        catalysts: vec![CatalystSpec::new("block", block)],
        max_catalysts: 1,
        placement_box: Rect {
            x0: -12,
            y0: -12,
            x1: 12,
            y1: 12,
        },
        max_gens: 128,
        require_period: None,
        symmetry: None,
        max_nodes: None,
    };
    let mut g = c.benchmark_group("catsearch-queen-bee-1");
    g.sample_size(10);
    for (name, par) in schedules() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| search_catalysts(&cfg, par).unwrap())
        });
    }
    g.finish();
}

fn stepper(c: &mut Criterion) {
    let soup = random_soup(9, 256, 256, 0.5);
    let mut g = c.benchmark_group("step-256x256-soup");
    g.bench_function("plane", |b| {
        b.iter(|| step(&soup, Topology::Plane).unwrap())
    });
    g.bench_function("reference", |b| {
        b.iter(|| step_reference(&soup, Topology::Plane).unwrap())
    });
    let torus = Topology::Torus(Torus::new(256, 256).unwrap());
    g.bench_function("torus", |b| b.iter(|| step(&soup, torus).unwrap()));
    g.finish();
}

criterion_group!(benches, census, catalog, catsearch, stepper);
criterion_main!(benches);
