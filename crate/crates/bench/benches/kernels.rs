use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use k2tlab::constructions::{petersen, polarity_graph, random_gnp};
use k2tlab::ramsey::{ramsey_exact, RamseyQuery};
use k2tlab::{detect, graph6, witness};

fn clique(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_clique");
    for n in [40, 80, 120] {
        let g = random_gnp(n, 0.5, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| detect::max_clique(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn induced_k2t(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_induced_k2t");
    for q in [7, 11, 13] {
        let g = polarity_graph(q).unwrap();
        group.bench_with_input(BenchmarkId::new("polarity", q), &g, |b, g| {
            b.iter(|| detect::find_induced_k2t(black_box(g), 2).unwrap())
        });
    }
    let g = random_gnp(200, 0.3, 2).unwrap();
    group.bench_function("gnp_200_t3", |b| b.iter(|| detect::find_induced_k2t(black_box(&g), 3).unwrap()));
    group.finish();
}

fn codec(c: &mut Criterion) {
    let g = random_gnp(500, 0.5, 3).unwrap();
    let text = graph6::encode(&g);
    c.bench_function("graph6_encode_500", |b| b.iter(|| graph6::encode(black_box(&g))));
    c.bench_function("graph6_decode_500", |b| b.iter(|| graph6::decode(black_box(&text)).unwrap()));
}

fn ramsey(c: &mut Criterion) {
    let mut group = c.benchmark_group("ramsey");
    group.sample_size(10);
    for (t, r) in [(3, 3), (3, 4)] {
        let q = RamseyQuery::classical(t, r).unwrap();
        group.bench_function(format!("R({t},{r})"), |b| b.iter(|| ramsey_exact(black_box(&q), 9).unwrap()));
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    c.bench_function("polarity_graph_31", |b| b.iter(|| polarity_graph(black_box(31)).unwrap()));
}

fn extraction(c: &mut Criterion) {
    let h = petersen().remove_vertex(0).unwrap().graph;
    let h = h.remove_vertex(0).unwrap().graph;
    let g = random_gnp(60, 0.6, 4).unwrap();
    c.bench_function("witness_extract_gnp60", |b| {
        b.iter(|| witness::extract(black_box(&g), &h, 2).unwrap())
    });
}

criterion_group!(benches, clique, induced_k2t, codec, ramsey, constructions, extraction);
criterion_main!(benches);
