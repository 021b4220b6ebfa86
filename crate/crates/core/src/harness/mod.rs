//! Experiment drivers: single runs, convergence studies, stabilization
//! sweeps, CSV tables and VTK snapshots.

mod csv;
mod vtk;

use std::fs;
use std::path::PathBuf;

use crate::error::{BiotError, Result};
use crate::fem::{l2_error_scalar, l2_error_vector, LOAD_QUAD_DEGREE};
use crate::mesh::{Mesh, Space};
use crate::mms::{Example, ManufacturedCase};
use crate::model::{BiotParameters, KernelSpec, PermeabilityKernel};
use crate::schemes::{
    default_stabilization, run_simulation, Discretization, InitialData, Scheme, SourceTerms,
    SplitConfig, TimeGrid, Trajectory, ZeroSources,
};

pub use csv::{write_convergence_csv, write_sweep_csv, CONVERGENCE_HEADER, SWEEP_HEADER};
pub use vtk::{export_vtk, write_vtk};

/// Problem data of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Manufactured(Example),
    /// Zero sources and zero initial data.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Monolithic,
    FixedStress,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stabilization {
    /// `α²/K_dr`
    Auto,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `k0 (1 + 0.02 sin(π r))`
    Benchmark,
    Constant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: Case,
    pub subdivisions: usize,
    pub tau: f64,
    pub final_time: f64,
    pub scheme: SchemeKind,
    pub stabilization: Stabilization,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub output_dir: Option<PathBuf>,
    pub vtk: bool,
    pub kernel: KernelKind,
    pub k0: f64,
    pub params: BiotParameters,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            case: Case::Manufactured(Example::One),
            subdivisions: 16,
            tau: 0.1,
            final_time: 1.0,
            scheme: SchemeKind::FixedStress,
            stabilization: Stabilization::Auto,
            tolerance: 1e-9,
            max_iterations: 200,
            output_dir: None,
            vtk: false,
            kernel: KernelKind::Benchmark,
            k0: 1.0,
            params: BiotParameters::benchmark(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(BiotError::InvalidInput(msg.into()));
        if self.subdivisions == 0 {
            return bad("n must be positive");
        }
        if !(self.tau > 0.0) || !(self.final_time > 0.0) {
            return bad("tau and T must be positive");
        }
        if self.final_time < 2.0 * self.tau * (1.0 - 1e-12) {
            return bad("T must be at least 2 tau: levels 0 and 1 are prescribed");
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return bad("eps_r must lie in (0, 1)");
        }
        if self.max_iterations == 0 {
            return bad("max iterations must be >= 1");
        }
        if let Stabilization::Value(l) = self.stabilization {
            if !(l >= 0.0) || !l.is_finite() {
                return bad("L must be a finite value >= 0");
            }
        }
        if !(self.k0 > 0.0) {
            return bad("k0 must be positive");
        }
        self.params.validate()?;
        TimeGrid::new(self.final_time, self.tau)?;
        Ok(())
    }

    pub fn resolved_stabilization(&self) -> f64 {
        match self.stabilization {
            Stabilization::Auto => default_stabilization(&self.params),
            Stabilization::Value(l) => l,
        }
    }

    pub fn kernel(&self) -> Result<PermeabilityKernel> {
        let spec = match self.kernel {
            KernelKind::Benchmark => KernelSpec::benchmark(self.k0),
            KernelKind::Constant => KernelSpec::Constant { k0: self.k0 },
        };
        PermeabilityKernel::new(spec, self.params.lag_scaling())
    }

    pub fn scheme(&self) -> Result<Scheme> {
        Ok(match self.scheme {
            SchemeKind::Monolithic => Scheme::Monolithic,
            SchemeKind::FixedStress => Scheme::FixedStress(SplitConfig::new(
                self.resolved_stabilization(),
                self.tolerance,
                self.max_iterations,
            )?),
        })
    }
}

/// One line of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub tau: f64,
    pub err_p: f64,
    pub err_u: f64,
    /// Observed pressure order against the previous row.
    pub order_p: Option<f64>,
    pub avg_iterations: f64,
    pub max_iterations: usize,
}

/// `log₂(e_prev / e_cur)`; 0 for identical errors.
pub fn observed_order(previous: f64, current: f64) -> f64 {
    if previous == current {
        return 0.0;
    }
    (previous / current).log2()
}

/// Result of a single run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub row: ConvergenceRow,
    pub trajectory: Trajectory,
    pub mesh: Mesh,
}

fn simulate(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let mesh = Mesh::unit_square(config.subdivisions)?;
    let kernel = config.kernel()?;
    let grid = TimeGrid::new(config.final_time, config.tau)?;
    let disc = Discretization::new(&mesh, config.params, kernel, config.tau)?;
    let scheme = config.scheme()?;
    let t_end = grid.time(grid.steps());

    let (trajectory, err_p, err_u) = match config.case {
        Case::Manufactured(example) => {
            let case = ManufacturedCase::new(example, config.params, kernel);
            let initial = case.initial_data(&mesh, config.tau);
            let tr = run_simulation(&disc, scheme, &initial, &case as &dyn SourceTerms, grid)?;
            let err_p = l2_error_scalar(
                &mesh,
                Space::P1,
                tr.final_pressure(),
                |x| case.pressure(x, t_end),
                LOAD_QUAD_DEGREE,
            )?;
            let err_u = l2_error_vector(
                &mesh,
                tr.final_displacement(),
                |x| case.displacement(x, t_end),
                LOAD_QUAD_DEGREE,
            )?;
            (tr, err_p, err_u)
        }
        Case::Zero => {
            let initial = InitialData::zero(disc.displacement_dofs(), disc.pressure_dofs());
            let tr = run_simulation(&disc, scheme, &initial, &ZeroSources, grid)?;
            let err_p = l2_error_scalar(&mesh, Space::P1, tr.final_pressure(), |_| 0.0, LOAD_QUAD_DEGREE)?;
            let err_u = l2_error_vector(&mesh, tr.final_displacement(), |_| [0.0; 2], LOAD_QUAD_DEGREE)?;
            (tr, err_p, err_u)
        }
    };
    let row = ConvergenceRow {
        h: mesh.h(),
        tau: config.tau,
        err_p,
        err_u,
        order_p: None,
        avg_iterations: trajectory.average_iterations(),
        max_iterations: trajectory.max_iterations(),
    };
    Ok(RunOutcome {
        row,
        trajectory,
        mesh,
    })
}

/// Executes one run; with an output directory it writes `summary.csv` and,
/// when enabled, one VTK file per level.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let outcome = simulate(config)?;
    if let Some(dir) = &config.output_dir {
        fs::create_dir_all(dir)?;
        let mut file = fs::File::create(dir.join("summary.csv"))?;
        write_convergence_csv(&mut file, std::slice::from_ref(&outcome.row))?;
        if config.vtk {
            let tr = &outcome.trajectory;
            for level in 0..tr.levels() {
                let path = dir.join(format!("level_{level:04}.vtk"));
                export_vtk(&outcome.mesh, &tr.displacements[level], &tr.pressures[level], &path)?;
            }
        }
    }
    Ok(outcome)
}

/// How the time step follows the mesh in a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauRule {
    /// The base `τ` on every mesh.
    Fixed,
    /// `τ` scaled with `h`: `τ_i = τ₀ n₀ / n_i`.
    Halving,
}

/// Rows computed so far and the error that stopped the study, if any.
#[derive(Debug)]
pub struct Study {
    pub rows: Vec<ConvergenceRow>,
    pub failure: Option<BiotError>,
}

/// Runs `base` on every mesh of `meshes`, filling in observed orders.
pub fn convergence_study(base: &RunConfig, meshes: &[usize], rule: TauRule) -> Result<Study> {
    if meshes.len() < 2 {
        return Err(BiotError::InvalidInput(
            "a convergence study needs at least two meshes".into(),
        ));
    }
    let n0 = meshes[0] as f64;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let mut config = base.clone();
        config.subdivisions = n;
        config.output_dir = None;
        if rule == TauRule::Halving {
            config.tau = base.tau * n0 / n as f64;
        }
        match simulate(&config) {
            Ok(outcome) => {
                let mut row = outcome.row;
                row.order_p = rows.last().map(|prev| observed_order(prev.err_p, row.err_p));
                rows.push(row);
            }
            Err(e) => {
                return Ok(Study {
                    rows,
                    failure: Some(e),
                })
            }
        }
    }
    Ok(Study {
        rows,
        failure: None,
    })
}

/// One line of a stabilization sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub stabilization: f64,
    /// `None` when the iteration failed at some level.
    pub avg_iterations: Option<f64>,
    pub converged: bool,
}

/// Fixed-stress runs of `base` for every `L`, executed concurrently; rows
/// come back in the order of `values`.
pub fn stabilization_sweep(base: &RunConfig, values: &[f64]) -> Result<Vec<SweepRow>> {
    if let Some(bad) = values.iter().find(|l| !(**l >= 0.0) || !l.is_finite()) {
        return Err(BiotError::InvalidInput(format!("L = {bad} must be >= 0")));
    }
    let mut config = base.clone();
    config.scheme = SchemeKind::FixedStress;
    config.output_dir = None;
    config.validate()?;

    let results: Vec<Result<SweepRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = values
            .iter()
            .map(|&l| {
                let mut c = config.clone();
                c.stabilization = Stabilization::Value(l);
                scope.spawn(move || match simulate(&c) {
                    Ok(outcome) => Ok(SweepRow {
                        stabilization: l,
                        avg_iterations: Some(outcome.row.avg_iterations),
                        converged: true,
                    }),
                    Err(e) if e.is_iteration_exhaustion() => Ok(SweepRow {
                        stabilization: l,
                        avg_iterations: None,
                        converged: false,
                    }),
                    Err(e) => Err(e),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}
