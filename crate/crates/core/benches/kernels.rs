//! Sequential against parallel execution on the three heavy kernels.
//! Build with `--no-default-features` and both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mcyl::laws::{check_mca_axioms, Budget};
use mcyl::semantics::{entails, SearchBounds};
use mcyl::syntax::{parse, parse_infer};
use mcyl::truth::{decide, TautOptions};
use mcyl::{DeMorganAlgebra, Exec, FullMAlgebra, Signature};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("mca_axioms");
    g.sample_size(10);
    let alg = FullMAlgebra::full(DeMorganAlgebra::k3(), 2, 2).unwrap();
    let budget = Budget {
        samples: 2000,
        ..Budget::default()
    };
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("K3", name), |b| {
            b.iter(|| black_box(check_mca_axioms(&alg, &budget, exec)))
        });
    }
    g.finish();
}

fn tautology(c: &mut Criterion) {
    let mut g = c.benchmark_group("tautology");
    let four = DeMorganAlgebra::four();
    // six primes, valid, so every valuation is visited
    let f = parse_infer(
        "((((p & q) | (r & s)) | ~(t & u)) => (((p & q) | (r & s)) | ~(t & u)))",
        &mut Signature::default(),
        &four,
    )
    .unwrap();
    for (name, exec) in MODES {
        let opts = TautOptions {
            exec,
            ..TautOptions::default()
        };
        g.bench_function(BenchmarkId::new("FOUR", name), |b| {
            b.iter(|| black_box(decide(&four, &f, &opts).unwrap()))
        });
    }
    g.finish();
}

fn entailment(c: &mut Criterion) {
    let mut g = c.benchmark_group("entails");
    g.sample_size(10);
    let k3 = DeMorganAlgebra::k3();
    let sig = Signature::new([("P", 1), ("R", 2)]);
    let sigma = [parse("A v0 . E v1 . R(v0,v1)", &sig, &k3).unwrap()];
    let phi = parse("E v0 . E v1 . (R(v0,v1) | P(v0))", &sig, &k3).unwrap();
    let bounds = SearchBounds::new(2, 2);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("K3", name), |b| {
            b.iter(|| black_box(entails(&k3, &sig, &sigma, &phi, None, &bounds, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, axioms, tautology, entailment);
criterion_main!(benches);
