use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sc_continuous::sc_decide_continuous_with;
use sc_freespace::Exec;
use sc_geometry::{SCInstance, Trajectory};
use std::hint::black_box;

/// A random walk repeated three times with jitter, so clusters exist.
fn repeated_walk(n: usize, seed: u64) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut x, mut y) = (0.0, 0.0);
    let base: Vec<(f64, f64)> = (0..n / 3)
        .map(|_| {
            x += rng.random_range(-1.0..1.0);
            y += rng.random_range(-1.0..1.0);
            (x, y)
        })
        .collect();
    let mut pts = Vec::new();
    for _ in 0..3 {
        pts.extend(base.iter().map(|&(x, y)| (x + rng.random_range(-0.1..0.1), y + rng.random_range(-0.1..0.1))));
    }
    Trajectory::from_xy(&pts).unwrap()
}

fn bench_decide(c: &mut Criterion) {
    let mut g = c.benchmark_group("continuous_decide");
    g.sample_size(10);
    for n in [30usize, 60] {
        let t = repeated_walk(n, 5);
        // m = 4 is one more than the copies, so the whole sweep runs.
        let inst = SCInstance::new(t, 4, 3.0, 0.5);
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            g.bench_with_input(BenchmarkId::new(name, n), &inst, |b, i| {
                b.iter(|| black_box(sc_decide_continuous_with(i, exec).yes))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bench_decide);
criterion_main!(benches);
