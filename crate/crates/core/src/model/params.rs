use crate::error::{BiotError, Result};

/// Physical constants of the dynamic Biot system.
///
/// `rho` is the bulk density of the mixture; porosity and the separate solid
/// density are not modeled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiotParameters {
    /// Biot coefficient.
    pub alpha: f64,
    /// Biot modulus `M`; the storage coefficient is `1/M`.
    pub biot_modulus: f64,
    pub rho: f64,
    pub rho_f: f64,
    pub mu: f64,
    pub lambda: f64,
    /// Pore fluid viscosity.
    pub eta: f64,
    /// Typical pore size.
    pub pore_size: f64,
}

impl BiotParameters {
    pub const DIMENSION: usize = 2;

    /// Unit material constants with `μ = λ = 10`, used by both benchmark cases.
    pub fn benchmark() -> Self {
        Self {
            alpha: 1.0,
            biot_modulus: 1.0,
            rho: 1.0,
            rho_f: 1.0,
            mu: 10.0,
            lambda: 10.0,
            eta: 1.0,
            pore_size: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.biot_modulus > 0.0, "M must be positive"),
            (self.mu > 0.0, "mu must be positive"),
            (self.lambda >= 0.0, "lambda must be non-negative"),
            (self.rho > 0.0, "rho must be positive"),
            (self.rho_f > 0.0, "rho_f must be positive"),
            (self.eta > 0.0, "eta must be positive"),
            (self.pore_size > 0.0, "pore size must be positive"),
            (self.alpha >= 0.0 && self.alpha <= 1.0, "alpha must lie in [0, 1]"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(BiotError::InvalidInput(msg.into()));
            }
        }
        Ok(())
    }

    /// `K_dr = 2μ/d + λ`.
    pub fn drained_bulk_modulus(&self) -> f64 {
        2.0 * self.mu / Self::DIMENSION as f64 + self.lambda
    }

    /// Factor `η / (l² ρ_f)` multiplying the time lag inside the kernel.
    pub fn lag_scaling(&self) -> f64 {
        self.eta / (self.pore_size * self.pore_size * self.rho_f)
    }
}

impl Default for BiotParameters {
    fn default() -> Self {
        Self::benchmark()
    }
}
