use crate::error::{BiotError, Result};

/// Pressure coefficient vectors at the time levels `ζ_i = i τ`, `i = 0, 1, ...`.
#[derive(Debug, Clone)]
pub struct HistoryStore {
    tau: f64,
    dofs: usize,
    levels: Vec<Vec<f64>>,
}

impl HistoryStore {
    pub fn new(tau: f64, dofs: usize) -> Result<Self> {
        if tau <= 0.0 {
            return Err(BiotError::InvalidInput("time step must be positive".into()));
        }
        Ok(Self {
            tau,
            dofs,
            levels: Vec::new(),
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn dofs(&self) -> usize {
        self.dofs
    }

    /// Number of stored levels.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn push(&mut self, pressure: Vec<f64>) -> Result<()> {
        if pressure.len() != self.dofs {
            return Err(BiotError::DimensionMismatch {
                expected: self.dofs,
                got: pressure.len(),
            });
        }
        self.levels.push(pressure);
        Ok(())
    }

    pub fn level(&self, i: usize) -> &[f64] {
        &self.levels[i]
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.tau
    }

    pub fn last(&self) -> Option<&[f64]> {
        self.levels.last().map(Vec::as_slice)
    }
}
