use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dtopo::homology::{build_clique_complex_with, VertexOrder};
use dtopo::homotopy::{find_contraction, find_contraction_with, ContractionSearch, DEFAULT_BUDGET};
use dtopo::motion::{spider_rule_from_contraction, verify_tcn_witness_with, PathAdjacency};
use dtopo::{fixtures, DigitalMap, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn clique_complex(c: &mut Criterion) {
    let x = fixtures::genus2();
    let order = VertexOrder::lexicographic(&x);
    let mut g = c.benchmark_group("clique_complex_genus2");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_clique_complex_with(&x, 3, &order, exec))
        });
    }
    g.finish();
}

fn spider_verification(c: &mut Criterion) {
    let x = fixtures::interval_power(3, 2);
    let ContractionSearch::Found(cert) = find_contraction(&x, 16, DEFAULT_BUDGET) else {
        panic!("[0,3]^2 contracts");
    };
    let w = spider_rule_from_contraction(&cert, 3);
    let mut g = c.benchmark_group("verify_tc3_rule_interval3_squared");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_tcn_witness_with(&x, &w, PathAdjacency::Adjacent, exec).unwrap())
        });
    }
    g.finish();
}

fn continuity(c: &mut Criterion) {
    let x = fixtures::genus2();
    let y = fixtures::interval_power(1, 3);
    let f = DigitalMap::constant(&x, &y, 0).unwrap();
    let mut g = c.benchmark_group("continuity_genus2");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| f.continuity_violation_with(exec))
        });
    }
    g.finish();
}

fn contraction_search(c: &mut Criterion) {
    let x = fixtures::wedge_msc6p();
    let mut g = c.benchmark_group("contraction_search_wedge");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_contraction_with(&x, 8, DEFAULT_BUDGET, exec).is_found())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    clique_complex,
    spider_verification,
    continuity,
    contraction_search
);
criterion_main!(benches);
