use std::time::Duration;

use corebreak::{break_core, core_influence, exact_mvc, generate_er, peel, MethodKind, MethodSpec, NodeState};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_peel(c: &mut Criterion) {
    let mut group = c.benchmark_group("peel");
    for n in [1_000, 10_000] {
        let g = generate_er(n, 4.0, 1).unwrap();
        let present = vec![true; n];
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| peel(g, &present).unwrap()));
    }
    group.finish();
}

fn bench_core_influence(c: &mut Criterion) {
    let mut group = c.benchmark_group("core_influence");
    let g = generate_er(10_000, 5.0, 2).unwrap();
    let state = NodeState::initial(&g);
    for order in [1, 2, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &l| {
            b.iter(|| core_influence(&g, &state, l).unwrap())
        });
    }
    group.finish();
}

fn bench_break_core(c: &mut Criterion) {
    let mut group = c.benchmark_group("break_core");
    group.sample_size(10);
    let g = generate_er(1_000, 5.0, 3).unwrap();
    for kind in [MethodKind::Hl, MethodKind::HlApprox, MethodKind::Hda, MethodKind::Ci] {
        let spec = MethodSpec::new(kind);
        group.bench_function(kind.as_str(), |b| b.iter(|| break_core(&g, &spec).unwrap()));
    }
    group.finish();
}

fn bench_exact_mvc(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_mvc");
    group.sample_size(10);
    for k in [3.0, 5.0] {
        let g = generate_er(100, k, 4).unwrap();
        group.bench_with_input(BenchmarkId::new("n100", k), &g, |b, g| {
            b.iter(|| exact_mvc(g, Duration::from_secs(60)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_peel, bench_core_influence, bench_break_core, bench_exact_mvc);
criterion_main!(benches);
