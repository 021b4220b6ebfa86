use biot_core::fem::{assemble_elasticity, assemble_stiffness_components};
use biot_core::mms::ManufacturedCase;
use biot_core::schemes::{fixed_stress_step, FixedStressSolver, MonolithicSolver, SchemeState};
use biot_core::{BiotParameters, Discretization, Mesh, SplitConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const TAU: f64 = 0.1;

fn setup(n: usize) -> (Mesh, Discretization, ManufacturedCase) {
    let params = BiotParameters::benchmark();
    let mesh = Mesh::unit_square(n).unwrap();
    let case = ManufacturedCase::example1(params, 1.0).unwrap();
    let disc = Discretization::new(&mesh, params, *case.kernel(), TAU).unwrap();
    (mesh, disc, case)
}

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assembly");
    for n in [16, 32] {
        let mesh = Mesh::unit_square(n).unwrap();
        group.bench_with_input(BenchmarkId::new("elasticity", n), &mesh, |b, m| {
            b.iter(|| assemble_elasticity(m, 10.0, 10.0))
        });
        group.bench_with_input(BenchmarkId::new("stiffness_components", n), &mesh, |b, m| {
            b.iter(|| assemble_stiffness_components(m))
        });
    }
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorization");
    group.sample_size(10);
    for n in [16, 32] {
        let (_, disc, _) = setup(n);
        let split = SplitConfig::with_defaults(disc.params());
        group.bench_with_input(BenchmarkId::new("fixed_stress", n), &disc, |b, d| {
            b.iter(|| FixedStressSolver::new(d, split).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("monolithic", n), &disc, |b, d| {
            b.iter(|| MonolithicSolver::new(d).unwrap())
        });
    }
    group.finish();
}

fn step(c: &mut Criterion) {
    let mut group = c.benchmark_group("fixed_stress_step");
    group.sample_size(20);
    for n in [16, 32] {
        let (mesh, disc, case) = setup(n);
        let solver = FixedStressSolver::new(&disc, SplitConfig::with_defaults(disc.params())).unwrap();
        let state = SchemeState::new(&disc, &case.initial_data(&mesh, TAU)).unwrap();
        let forcing = disc.forcing(&case, 2.0 * TAU);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| fixed_stress_step(&disc, &solver, &state, &forcing, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, assembly, factorization, step);
criterion_main!(benches);
