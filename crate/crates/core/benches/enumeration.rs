use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclotome::cyclotomy::periods_exact;
use cyclotome::weights::{sample_weights, wd_naive, wd_tsum};
use cyclotome::{Code, CodeSpec, Execution};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn codes() -> Vec<(&'static str, Code)> {
    vec![
        ("gf7-48", Code::new(CodeSpec::consecutive(7, 1, 2, 2, 2, 1).with_modulus(&[3, 6, 1])).unwrap()),
        ("gf5-24-t3", Code::new(CodeSpec::consecutive(5, 1, 2, 3, 3, 1).with_modulus(&[2, 4, 1])).unwrap()),
    ]
}

fn naive(c: &mut Criterion) {
    let mut group = c.benchmark_group("naive");
    for (name, code) in codes() {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &code, |b, code| {
                b.iter(|| wd_naive(black_box(code), u64::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn tsum(c: &mut Criterion) {
    let mut group = c.benchmark_group("tsum");
    for (name, code) in codes() {
        let periods = periods_exact(code.tower(), code.params().big_n).unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &code, |b, code| {
                b.iter(|| wd_tsum(black_box(code), &periods, u64::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let code = Code::new(CodeSpec::consecutive(2, 1, 6, 7, 7, 1).with_modulus(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
    let mut group = c.benchmark_group("sampling");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "binary-63"), |b| {
            b.iter(|| sample_weights(black_box(&code), 100_000, 0, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, naive, tsum, sampling);
criterion_main!(benches);
