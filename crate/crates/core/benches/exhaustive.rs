//! Sequential versus rayon-parallel drivers on the two heaviest checks.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superroots::rootsys::checks::check_ns_sum_with;
use superroots::shadow::check_p_with;
use superroots::suite::random_tight_config;
use superroots::{AffineFamily, AlgebraParams, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn ns_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("ns_sum");
    for f in AffineFamily::ALL {
        let p = AlgebraParams::new(f, 3, 3).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, f), &p, |b, p| {
                b.iter(|| assert!(check_ns_sum_with(p, 8, exec).passed()))
            });
        }
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("p_closure");
    for f in AffineFamily::ALL {
        let p = AlgebraParams::new(f, 2, 2).unwrap();
        let (cfg, _) = random_tight_config(&p, &mut ChaCha8Rng::seed_from_u64(1), 8, 1000).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, f), &cfg, |b, cfg| {
                b.iter(|| assert!(check_p_with(cfg, 8, exec).passed()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, ns_sum, closure);
criterion_main!(benches);
