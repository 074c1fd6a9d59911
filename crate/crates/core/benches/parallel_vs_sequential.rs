use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use transversals::generators::{gen_planted_ham_family, gen_witness_instance_ham, gen_witness_instance_pm};
use transversals::multiplier::{many_ham_transversals_with, many_pm_transversals_with};
use transversals::oracle::{count_ham_transversals_with, SearchBudget};
use transversals::sampler::chernoff_monte_carlo;
use transversals::{CandidateSet, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("chernoff_monte_carlo");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "n=1000,p=0.05,1e5"), |b| {
            b.iter(|| chernoff_monte_carlo(1000, 0.05, 0.3, 100_000, black_box(7), exec).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let (f, _) = gen_planted_ham_family(10, 6, 3).unwrap();
    let mut group = c.benchmark_group("count_ham_transversals");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "n=10"), |b| {
            b.iter(|| count_ham_transversals_with(black_box(&f), SearchBudget::default(), exec).unwrap())
        });
    }
    group.finish();
}

fn multipliers(c: &mut Criterion) {
    let members = [0, 4, 8, 12, 16];
    let (hf, ht) = gen_witness_instance_ham(20, &members, 3, 1).unwrap();
    let hs = CandidateSet::new(20, members).unwrap();
    let (pf, pt) = gen_witness_instance_pm(10, 4, 1).unwrap();
    let ps = CandidateSet::new(20, 0..10).unwrap();
    let mut group = c.benchmark_group("multiplier");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "ham n=20 d=3"), |b| {
            b.iter(|| many_ham_transversals_with(black_box(&hf), &ht, &hs, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new(name, "pm n=10 d=4"), |b| {
            b.iter(|| many_pm_transversals_with(black_box(&pf), &pt, &ps, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, oracle, multipliers);
criterion_main!(benches);
