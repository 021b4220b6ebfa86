mod common;

use biot_core::mms::{Example, ManufacturedCase};
use biot_core::model::mechanics_convolution;
use biot_core::fem::assemble_grad_components;
use biot_core::{
    run_simulation, BiotParameters, Discretization, HistoryStore, Mesh, PermeabilityKernel,
    Scheme, SplitConfig, TimeGrid,
};
use common::{memoryless_run, rel_diff};

#[test]
fn constant_kernel_has_no_explicit_mechanics_memory() {
    let mesh = Mesh::unit_square(3).unwrap();
    let kernel = PermeabilityKernel::constant(2.0).unwrap();
    let grad = assemble_grad_components(&mesh);
    let mut h = HistoryStore::new(0.1, mesh.num_vertices()).unwrap();
    for i in 0..7 {
        h.push((0..mesh.num_vertices()).map(|v| ((i * v) as f64).sin() + 1.0).collect())
            .unwrap();
    }
    for n in 1..7 {
        let m = mechanics_convolution(&h, &kernel, n, &grad).unwrap();
        assert!(m.explicit.iter().all(|v| *v == 0.0));
    }
}

#[test]
fn constant_kernel_reproduces_memoryless_discretization() {
    let tau = 0.1;
    let k0 = 1.5;
    let params = BiotParameters::benchmark();
    let mesh = Mesh::unit_square(6).unwrap();
    let kernel = PermeabilityKernel::constant(k0).unwrap();
    let disc = Discretization::new(&mesh, params, kernel, tau).unwrap();
    for example in [Example::One, Example::Two] {
        let case = ManufacturedCase::new(example, params, kernel);
        let initial = case.initial_data(&mesh, tau);
        let grid = TimeGrid::new(0.6, tau).unwrap();
        let (us, ps) = memoryless_run(&disc, k0, &initial, &case, grid.steps());
        let schemes = [
            Scheme::Monolithic,
            Scheme::FixedStress(SplitConfig::new(0.05, 1e-13, 500).unwrap()),
        ];
        for scheme in schemes {
            let tr = run_simulation(&disc, scheme, &initial, &case, grid).unwrap();
            for n in 0..tr.levels() {
                assert!(rel_diff(&tr.pressures[n], &ps[n]) <= 1e-10, "{example:?} level {n}");
                assert!(rel_diff(&tr.displacements[n], &us[n]) <= 1e-10, "{example:?} level {n}");
            }
        }
    }
}
