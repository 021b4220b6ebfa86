//! Fully discrete time stepping: a monolithic block solve per level and the
//! fixed-stress splitting iteration.
//!
//! Levels `n = 0, 1` are prescribed data; the schemes solve `n = 2..=N`.

mod discretization;
mod driver;
mod stepping;

use crate::error::{BiotError, Result};
use crate::mesh::Point;
use crate::model::BiotParameters;

pub use discretization::{Discretization, StepForcing};
pub use driver::{run_simulation, Trajectory};
pub use stepping::{
    fixed_stress_step, monolithic_residual, monolithic_step, FixedStressSolver, MonolithicSolver,
    SchemeState,
};

/// `L = α²/K_dr` with `K_dr = 2μ/d + λ`.
pub fn default_stabilization(params: &BiotParameters) -> f64 {
    params.alpha * params.alpha / params.drained_bulk_modulus()
}

/// Uniform partition of `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    final_time: f64,
    tau: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(final_time: f64, tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !(final_time > 0.0) {
            return Err(BiotError::InvalidInput(
                "final time and time step must be positive".into(),
            ));
        }
        let ratio = final_time / tau;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-12 * ratio.max(1.0) {
            return Err(BiotError::InvalidInput(format!(
                "T = {final_time} is not an integer multiple of tau = {tau}"
            )));
        }
        Ok(Self {
            final_time,
            tau,
            steps: steps as usize,
        })
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Number of steps `N`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

/// Initial displacement, velocity and pressure, and optionally the first
/// level `(u¹, p¹)`. Without it the first level is `u¹ = u⁰ + τ u₁`, `p¹ = p⁰`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub displacement: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pressure: Vec<f64>,
    pub first_step: Option<(Vec<f64>, Vec<f64>)>,
}

impl InitialData {
    pub fn zero(displacement_dofs: usize, pressure_dofs: usize) -> Self {
        Self {
            displacement: vec![0.0; displacement_dofs],
            velocity: vec![0.0; displacement_dofs],
            pressure: vec![0.0; pressure_dofs],
            first_step: None,
        }
    }

    /// `(u¹, p¹)`, using the explicit rule when no first level is given.
    pub fn first_level(&self, tau: f64) -> (Vec<f64>, Vec<f64>) {
        match &self.first_step {
            Some((u, p)) => (u.clone(), p.clone()),
            None => (
                self.displacement
                    .iter()
                    .zip(&self.velocity)
                    .map(|(u, v)| u + tau * v)
                    .collect(),
                self.pressure.clone(),
            ),
        }
    }
}

/// Parameters of the fixed-stress iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    pub stabilization: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl SplitConfig {
    pub fn new(stabilization: f64, tolerance: f64, max_iterations: usize) -> Result<Self> {
        let c = Self {
            stabilization,
            tolerance,
            max_iterations,
        };
        c.validate()?;
        Ok(c)
    }

    /// `L = α²/K_dr`, `ε_r = 1e-9`, at most 200 iterations.
    pub fn with_defaults(params: &BiotParameters) -> Self {
        Self {
            stabilization: default_stabilization(params),
            tolerance: 1e-9,
            max_iterations: 200,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.stabilization >= 0.0) || !self.stabilization.is_finite() {
            return Err(BiotError::InvalidInput("L must be a finite value >= 0".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(BiotError::InvalidInput("eps_r must lie in (0, 1)".into()));
        }
        if self.max_iterations == 0 {
            return Err(BiotError::InvalidInput("max iterations must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    Monolithic,
    FixedStress(SplitConfig),
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Monolithic => "monolithic",
            Scheme::FixedStress(_) => "fixed-stress",
        }
    }
}

/// Outcome of one solved level.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub level: usize,
    pub time: f64,
    /// Splitting iterations; 1 for the monolithic scheme.
    pub iterations: usize,
    /// Relative pressure increment of the last iteration.
    pub final_increment: f64,
    /// Relative pressure increment of every iteration.
    pub increments: Vec<f64>,
}

/// Right-hand sides `f₁` (body force) and `f₂` (fluid source).
pub trait SourceTerms: Sync {
    fn body_force(&self, x: Point, t: f64) -> [f64; 2];
    fn fluid_source(&self, x: Point, t: f64) -> f64;

    /// Lets assembly skip quadrature for identically vanishing sources.
    fn is_zero(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSources;

impl SourceTerms for ZeroSources {
    fn body_force(&self, _: Point, _: f64) -> [f64; 2] {
        [0.0; 2]
    }

    fn fluid_source(&self, _: Point, _: f64) -> f64 {
        0.0
    }

    fn is_zero(&self) -> bool {
        true
    }
}
