use std::hint::black_box;

use braidrep::braid::BraidWord;
use braidrep::decomp::check_reconstruction;
use braidrep::hwspace::{check_rho_relations, rho_matrix};
use braidrep::par::{set_execution, Execution};
use braidrep::ring::LaurentPoly;
use braidrep::verma::{weight_basis, TensorVec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn random_vectors(n: usize, l: u32, count: usize) -> Vec<TensorVec<LaurentPoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let basis = weight_basis(n, l);
    (0..count)
        .map(|_| {
            let mut v = TensorVec::zero(n);
            for idx in &basis {
                let c = LaurentPoly::qs(rng.gen_range(1..=4), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
                v.add_term(idx.clone(), &c);
            }
            v
        })
        .collect()
}

fn word_matrix(c: &mut Criterion) {
    let w = BraidWord::parse(5, "1 2 3 4 -1 2 -3 4 1 2 3 4").unwrap();
    // Warm the generator cache so both modes time the products only.
    rho_matrix(5, 3, &w).unwrap();
    let mut group = c.benchmark_group("rho_matrix n5 l3");
    for (name, mode) in MODES {
        set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| rho_matrix(5, 3, black_box(&w)).unwrap())
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    check_rho_relations(5, 2);
    let mut group = c.benchmark_group("braid relations n5 l2");
    group.sample_size(10);
    for (name, mode) in MODES {
        set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_rho_relations(5, 2))
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let vectors = random_vectors(3, 3, 16);
    check_reconstruction(&vectors);
    let mut group = c.benchmark_group("decomposition n3 l3 x16");
    group.sample_size(10);
    for (name, mode) in MODES {
        set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_reconstruction(black_box(&vectors)))
        });
    }
    group.finish();
}

criterion_group!(benches, word_matrix, relations, decomposition);
criterion_main!(benches);
