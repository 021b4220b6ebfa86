use crate::error::{BiotError, Result};

use super::discretization::Discretization;
use super::stepping::{fixed_stress_step, monolithic_step, FixedStressSolver, MonolithicSolver, SchemeState};
use super::{InitialData, Scheme, SourceTerms, StepReport, TimeGrid};

/// All levels `(t_n, uⁿ, pⁿ)` for `n = 0..=N` and one report per solved level.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub displacements: Vec<Vec<f64>>,
    pub pressures: Vec<Vec<f64>>,
    pub reports: Vec<StepReport>,
}

impl Trajectory {
    pub fn levels(&self) -> usize {
        self.times.len()
    }

    pub fn final_displacement(&self) -> &[f64] {
        self.displacements.last().expect("trajectory holds levels 0 and 1")
    }

    pub fn final_pressure(&self) -> &[f64] {
        self.pressures.last().expect("trajectory holds levels 0 and 1")
    }

    /// Mean iterations over the solved levels `n ≥ 2`; 0 with none solved.
    pub fn average_iterations(&self) -> f64 {
        if self.reports.is_empty() {
            return 0.0;
        }
        self.reports.iter().map(|r| r.iterations as f64).sum::<f64>() / self.reports.len() as f64
    }

    pub fn max_iterations(&self) -> usize {
        self.reports.iter().map(|r| r.iterations).max().unwrap_or(0)
    }
}

/// Runs levels `2..=N` of `grid` with the chosen scheme.
pub fn run_simulation(
    disc: &Discretization,
    scheme: Scheme,
    initial: &InitialData,
    sources: &dyn SourceTerms,
    grid: TimeGrid,
) -> Result<Trajectory> {
    if (grid.tau() - disc.tau()).abs() > 1e-14 * disc.tau() {
        return Err(BiotError::InvalidInput(format!(
            "time grid step {} differs from the discretization step {}",
            grid.tau(),
            disc.tau()
        )));
    }
    if grid.steps() < 2 {
        return Err(BiotError::InvalidInput(
            "at least two steps are needed (T >= 2 tau)".into(),
        ));
    }
    let mut state = SchemeState::new(disc, initial)?;
    let (u1, p1) = initial.first_level(disc.tau());
    let mut trajectory = Trajectory {
        times: vec![0.0, grid.time(1)],
        displacements: vec![initial.displacement.clone(), u1],
        pressures: vec![initial.pressure.clone(), p1],
        reports: Vec::with_capacity(grid.steps() - 1),
    };

    #[allow(clippy::large_enum_variant)] // one per run
    enum Stepper {
        Monolithic(MonolithicSolver),
        Split(FixedStressSolver),
    }
    let stepper = match scheme {
        Scheme::Monolithic => Stepper::Monolithic(MonolithicSolver::new(disc)?),
        Scheme::FixedStress(config) => Stepper::Split(FixedStressSolver::new(disc, config)?),
    };

    for n in 2..=grid.steps() {
        let t = grid.time(n);
        let forcing = disc.forcing(sources, t);
        let (u, p, report) = match &stepper {
            Stepper::Monolithic(solver) => {
                let (u, p) = monolithic_step(disc, solver, &state, &forcing)?;
                let report = StepReport {
                    level: n,
                    time: t,
                    iterations: 1,
                    final_increment: 0.0,
                    increments: Vec::new(),
                };
                (u, p, report)
            }
            Stepper::Split(solver) => fixed_stress_step(disc, solver, &state, &forcing, None)?,
        };
        trajectory.times.push(t);
        trajectory.displacements.push(u.clone());
        trajectory.pressures.push(p.clone());
        trajectory.reports.push(report);
        state.advance(u, p)?;
    }
    Ok(trajectory)
}
