//! Sequential vs data-parallel execution of the hot loops.
//!
//! Run with `cargo bench -p hombias`; build with `--no-default-features` to
//! see both variants fall back to the sequential path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hombias::construct::{involutive_transversal_an, monte_carlo};
use hombias::group::embed_parity_subgroup_an;
use hombias::search::{exhaustive_max_bias, local_search_max_bias, LocalSearchConfig};
use hombias::{Exec, Group, SignFunction};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn bench_triple_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("triple_sum");
    for spec in ["S5", "A6", "A7"] {
        let g = Group::parse(spec).unwrap();
        let f = SignFunction::random_balanced(&g, 1).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, spec), &f, |b, f| {
                b.iter(|| black_box(f).triple_sum(exec))
            });
        }
    }
    group.finish();
}

fn bench_exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for spec in ["A4", "D9", "S4"] {
        let g = Group::parse(spec).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, spec), &g, |b, g| {
                b.iter(|| exhaustive_max_bias(g, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    for n in [5, 6] {
        let g = Group::parse(&format!("A{n}")).unwrap();
        let emb = embed_parity_subgroup_an(&g).unwrap();
        let t = involutive_transversal_an(&emb.subgroup).unwrap();
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("A{n}x100")), |b| {
                b.iter(|| monte_carlo(&emb.sign, &t, 100, 7, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_local_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_search");
    group.sample_size(10);
    let g = Group::parse("A6").unwrap();
    let config = LocalSearchConfig {
        seed: 3,
        restarts: 4,
        ..Default::default()
    };
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "A6x4"), |b| {
            b.iter(|| local_search_max_bias(&g, &config, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_triple_sum,
    bench_exhaustive,
    bench_monte_carlo,
    bench_local_search
);
criterion_main!(benches);
