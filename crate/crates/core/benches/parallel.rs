use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use psplus::harness::{run_suite, Suite};
use psplus::par::Exec;
use psplus::propcore::enumerate_models_with;
use psplus::testgen;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracle(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let gt = loop {
        let gt = testgen::ground_theory(&mut rng, 20, 8);
        if gt.atom_count() == 20 {
            break gt;
        }
    };
    let mut group = c.benchmark_group("enumerate_models_20_atoms");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| enumerate_models_with(&gt, None, exec).unwrap())
        });
    }
    group.finish();
}

fn harness(c: &mut Criterion) {
    let suite = Suite::parse(
        r#"
[[run]]
family = "vertex-cover-catom"
n = 20
m = 40
k = "min"
seeds = 8

[[run]]
family = "nqueens"
n = 8
mode = "count"
"#,
    )
    .unwrap();
    let mut group = c.benchmark_group("suite_vc20x8_q8");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_suite(&suite, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, harness);
criterion_main!(benches);
