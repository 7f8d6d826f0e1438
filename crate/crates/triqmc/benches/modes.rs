//! Sequential vs. parallel execution on the two heavy code paths: the exact
//! discrepancy sweep and a replicated convergence study.
//!
//! Run with `cargo bench -p triqmc`. The parallel arms only exist when the
//! `parallel` feature is enabled (it is by default); on a single-core host
//! both modes should land within noise of each other.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use triqmc::quadrature::convergence_study_with;
use triqmc::vdc::ScrambleMode;
use triqmc::{
    builtin_integrand, parallelogram_discrepancy_grid_with, Execution, Generator,
    ReferenceTriangle, Triangle,
};

fn discrepancy_modes(c: &mut Criterion) {
    let t = Triangle::reference(ReferenceTriangle::EquilateralUnitArea);
    let mut group = c.benchmark_group("exact_discrepancy");
    group.sample_size(10);
    for n in [256u64, 1024] {
        let ps = triqmc::vdc_sequence(&t, n, 0);
        group.bench_with_input(BenchmarkId::new("sequential", n), &ps, |b, ps| {
            b.iter(|| {
                triqmc::discrepancy::parallelogram_discrepancy_with(ps, Execution::Sequential)
                    .unwrap()
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &ps, |b, ps| {
            b.iter(|| {
                triqmc::discrepancy::parallelogram_discrepancy_with(ps, Execution::Parallel)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn grid_modes(c: &mut Criterion) {
    let t = Triangle::reference(ReferenceTriangle::EquilateralUnitArea);
    let ps = triqmc::vdc_sequence(&t, 512, 0);
    let mut group = c.benchmark_group("grid_discrepancy_512x512");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| parallelogram_discrepancy_grid_with(&ps, 512, Execution::Sequential).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| parallelogram_discrepancy_grid_with(&ps, 512, Execution::Parallel).unwrap())
    });
    group.finish();
}

fn study_modes(c: &mut Criterion) {
    let t = Triangle::reference(ReferenceTriangle::EquilateralUnitArea);
    let ig = builtin_integrand(&t, "cos2pi").unwrap();
    let gen = Generator::VdcScrambled {
        depth: 16,
        mode: ScrambleMode::Centroid,
    };
    let n_list = [64u64, 256, 1024];
    let mut group = c.benchmark_group("convergence_study");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            convergence_study_with(&gen, &t, &ig, &n_list, 8, 1, Execution::Sequential).unwrap()
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            convergence_study_with(&gen, &t, &ig, &n_list, 8, 1, Execution::Parallel).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, discrepancy_modes, grid_modes, study_modes);
criterion_main!(benches);
