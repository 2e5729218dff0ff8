//! Serial vs rayon search over F_2, dim R ≤ 4. Without the `parallel`
//! feature both variants run serially.

use bisep::search::{search, SearchConfig};
use bisep::Field;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn config(jobs: usize) -> SearchConfig {
    let mut cfg = SearchConfig::new(Field::prime(2).unwrap());
    cfg.random_algebras = 300;
    cfg.jobs = jobs;
    cfg.timing = false;
    cfg
}

fn bench_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search_f2_dim4");
    g.sample_size(10);
    for (label, jobs) in [("serial", 1), ("parallel", 0)] {
        let cfg = config(jobs);
        g.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| {
                let r = search(cfg).unwrap();
                assert!(r.violations.is_empty());
                r.filter_hits
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
