//! Sequential vs parallel on the enumeration kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gradpi_core::cocycles::TwoCocycle;
use gradpi_core::cyclo::field;
use gradpi_core::embed::{regular_coset_embedding, verify_graded_map_with};
use gradpi_core::galg::{build_gsimple, matrix_algebra, GSimpleData};
use gradpi_core::groups::{coset_reps, is_n_permutable_with, FiniteGroup, Subgroup};
use gradpi_core::par::Mode;
use gradpi_core::structure::{codimension_with, Budget};

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn permutability(c: &mut Criterion) {
    let h = FiniteGroup::central_extension(&TwoCocycle::heisenberg(3, 1)).unwrap();
    let mut group = c.benchmark_group("permutability_heis27_n4");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(is_n_permutable_with(&h, 4, mode).holds))
        });
    }
    group.finish();
}

fn codimension(c: &mut Criterion) {
    let m2 = matrix_algebra(2, &field(1));
    let mut group = c.benchmark_group("codimension_m2_n4");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(codimension_with(&m2, 4, Budget::default(), mode).unwrap()))
        });
    }
    group.finish();
}

fn monomial_identity(c: &mut Criterion) {
    // M_4 with an A4 elementary grading
    let a4 = FiniteGroup::alternating(4);
    let e = Subgroup::trivial(&a4);
    let alpha = TwoCocycle::trivial(&e.as_group(), 1);
    let data = GSimpleData::new(e, alpha, vec![0, 1, 2, 3]).unwrap();
    let alg = build_gsimple(&data, &field(1)).unwrap();
    let word = [1, 2, 3, 4, 5];
    let mut group = c.benchmark_group("monomial_identity_len5");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(alg.monomial_is_identity_with(&word, mode)))
        });
    }
    group.finish();
}

fn embedding(c: &mut Criterion) {
    let s4 = FiniteGroup::symmetric(4);
    let t = Subgroup::trivial(&s4);
    let m = regular_coset_embedding(&t, &coset_reps(&t), &field(1)).unwrap();
    let mut group = c.benchmark_group("verify_regular_s4");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify_graded_map_with(&m, mode).all()))
        });
    }
    group.finish();
}

criterion_group!(benches, permutability, codimension, monomial_identity, embedding);
criterion_main!(benches);
