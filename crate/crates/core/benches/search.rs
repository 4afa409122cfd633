use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use delpezzo::cubic::{primitive_solution_mod_p3, LocalSpec};
use delpezzo::arith::Factorizer;
use delpezzo::dp4::{sixteen_lines_with, QuadricPencil};
use delpezzo::exec::{Parallelism, SearchConfig};
use delpezzo::quadform::{find_common_isotropic, DiagQF};

const MODES: [(&str, Parallelism); 2] =
    [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn config(parallelism: Parallelism) -> SearchConfig {
    SearchConfig { parallelism, ..SearchConfig::default() }
}

/// Full projective scan: the pair has no common zero over odd-degree
/// extensions of F_3.
fn anisotropic_scan(c: &mut Criterion) {
    let q1 = DiagQF::from_ints(&[1, 1, 1, 1]).unwrap();
    let q2 = DiagQF::from_ints(&[1, 2, 1, 2]).unwrap();
    let mut group = c.benchmark_group("anisotropic_scan_f243");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_common_isotropic(&q1, &q2, 3, 5, &config(mode)).unwrap())
        });
    }
    group.finish();
}

fn local_oracle(c: &mut Criterion) {
    let spec = LocalSpec::new(7, 3).unwrap();
    let mut group = c.benchmark_group("mod_p3_oracle_p7");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| primitive_solution_mod_p3(&spec, &config(mode)).unwrap())
        });
    }
    group.finish();
}

fn lines(c: &mut Criterion) {
    let pencil = QuadricPencil::from_ints([1, 1, 1, 1, 1], [2, 3, 5, 7, 11]).unwrap();
    let factorizer = Factorizer::default();
    let mut group = c.benchmark_group("sixteen_lines");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sixteen_lines_with(&pencil, &factorizer, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, anisotropic_scan, local_oracle, lines);
criterion_main!(benches);
