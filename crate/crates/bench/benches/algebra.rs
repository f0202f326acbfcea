use criterion::{black_box, criterion_group, criterion_main, Criterion};
use vhess_bench::{generic_matrix, instance, skew_matrix};
use vhess_core::families::{self, FamilyId};
use vhess_core::hessian::{
    generic_rank, hess_is_zero_with, hessian_matrix, profile_with, HessMode, ProfileOptions,
    RankModStrategy, SampleConfig,
};
use vhess_core::linalg::{adjugate, cofactor_determinant, determinant, pfaffian};
use vhess_core::suite::{run_criterion, RunOptions};

fn linear_algebra(c: &mut Criterion) {
    let m4 = generic_matrix(4);
    let m5 = generic_matrix(5);
    let s6 = skew_matrix(6);
    c.bench_function("determinant 4x4 elimination", |b| b.iter(|| determinant(black_box(&m4))));
    c.bench_function("determinant 4x4 expansion", |b| {
        b.iter(|| cofactor_determinant(black_box(&m4)))
    });
    c.bench_function("determinant 5x5 elimination", |b| b.iter(|| determinant(black_box(&m5))));
    c.bench_function("adjugate 4x4", |b| b.iter(|| adjugate(black_box(&m4))));
    c.bench_function("pfaffian 6x6", |b| b.iter(|| pfaffian(black_box(&s6))));
}

fn hessians(c: &mut Criterion) {
    let cfg = SampleConfig::default();
    let perazzo = families::perazzo().polynomial;
    let ext = families::perazzo_ext(6).unwrap().polynomial;
    let p7 = families::p7_fermat().polynomial;
    c.bench_function("hess exact perazzo", |b| {
        b.iter(|| hess_is_zero_with(black_box(&perazzo), &cfg, HessMode::Exact))
    });
    c.bench_function("hess sampled perazzo-ext 6", |b| {
        b.iter(|| hess_is_zero_with(black_box(&ext), &cfg, HessMode::Probabilistic))
    });
    let h = hessian_matrix(&p7);
    c.bench_function("generic rank p7", |b| b.iter(|| generic_rank(black_box(&h), &cfg)));
}

fn profiles(c: &mut Criterion) {
    let cfg = SampleConfig::default();
    let sampled = ProfileOptions {
        hess_mode: HessMode::Probabilistic,
        rank_mod: RankModStrategy::Sample,
    };
    let p7 = families::p7_fermat().polynomial;
    let pf = instance(FamilyId::PfSlice).polynomial;
    let mut group = c.benchmark_group("profiles");
    group.sample_size(10);
    group.bench_function("p7 sampled", |b| b.iter(|| profile_with(black_box(&p7), &cfg, sampled)));
    group.bench_function("pf-slice sampled", |b| {
        b.iter(|| profile_with(black_box(&pf), &cfg, sampled))
    });
    group.bench_function("criterion 10", |b| b.iter(|| run_criterion(10, &cfg, RunOptions::default())));
    group.finish();
}

criterion_group!(benches, linear_algebra, hessians, profiles);
criterion_main!(benches);
