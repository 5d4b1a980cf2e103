use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parkfiber::enumerator::{brute_force, fiber_witnesses, Budget, OracleOptions};
use parkfiber::fibers::total_sum;
use parkfiber::par::Jobs;
use parkfiber::{CarLengths, ParkingOrder, Rule};

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(3))
        .warm_up_time(Duration::from_millis(500))
}

fn jobs_under_test() -> Vec<(&'static str, Jobs)> {
    let mut v = vec![("serial", Jobs::SERIAL)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Jobs(0)));
    }
    v
}

fn bench_total_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("total_sum");
    let lengths = CarLengths::new(vec![1, 2, 3, 1, 2, 3, 1, 2, 3]).unwrap();
    for rule in Rule::ALL {
        for (name, jobs) in jobs_under_test() {
            group.bench_with_input(BenchmarkId::new(name, rule), &rule, |b, &rule| {
                b.iter(|| total_sum(&lengths, rule, jobs))
            });
        }
    }
    group.finish();
}

fn bench_brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    let lengths = CarLengths::new(vec![2, 1, 3, 1, 2]).unwrap();
    for rule in Rule::ALL {
        for (name, jobs) in jobs_under_test() {
            let opts = OracleOptions {
                jobs,
                ..OracleOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(name, rule), &rule, |b, &rule| {
                b.iter(|| brute_force(&lengths, rule, opts).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_witnesses(c: &mut Criterion) {
    let mut group = c.benchmark_group("fiber_witnesses");
    let lengths = CarLengths::new(vec![1, 6, 5, 5, 3, 2, 2]).unwrap();
    let sigma = ParkingOrder::new(vec![2, 4, 5, 7, 3, 6, 1]).unwrap();
    for (name, jobs) in jobs_under_test() {
        group.bench_function(name, |b| {
            b.iter(|| fiber_witnesses(&lengths, &sigma, Rule::Sequence, Budget::DEFAULT, jobs))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_total_sum, bench_brute_force, bench_witnesses
}
criterion_main!(benches);
