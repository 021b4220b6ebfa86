//! Dynamic permeability kernels `A(lag)`.

use std::f64::consts::PI;

use crate::error::{BiotError, Result};
use crate::tensor::{self, Tensor2};

/// Isotropic kernel families: `A(r) = k0 (1 + a sin(ω r)) I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// Memoryless permeability `k0 I`.
    Constant { k0: f64 },
    /// `k0 (1 + amplitude · sin(frequency · r)) I`.
    Sinusoidal {
        k0: f64,
        amplitude: f64,
        frequency: f64,
    },
}

impl KernelSpec {
    /// `k0 + 0.02 k0 sin(π r)`, the benchmark kernel.
    pub fn benchmark(k0: f64) -> Self {
        KernelSpec::Sinusoidal {
            k0,
            amplitude: 0.02,
            frequency: PI,
        }
    }

    pub fn k0(&self) -> f64 {
        match *self {
            KernelSpec::Constant { k0 } | KernelSpec::Sinusoidal { k0, .. } => k0,
        }
    }

    /// `(amplitude, frequency)`; zero amplitude for the constant kernel.
    pub fn oscillation(&self) -> (f64, f64) {
        match *self {
            KernelSpec::Constant { .. } => (0.0, 0.0),
            KernelSpec::Sinusoidal {
                amplitude,
                frequency,
                ..
            } => (amplitude, frequency),
        }
    }
}

/// A kernel together with the lag scaling `η/(l²ρ_f)` and the range of lags
/// (before scaling) at which it may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermeabilityKernel {
    spec: KernelSpec,
    lag_scaling: f64,
    min_lag: f64,
    max_lag: f64,
}

impl PermeabilityKernel {
    pub fn new(spec: KernelSpec, lag_scaling: f64) -> Result<Self> {
        if spec.k0() <= 0.0 {
            return Err(BiotError::InvalidInput("k0 must be positive".into()));
        }
        let (amplitude, _) = spec.oscillation();
        if amplitude.abs() >= 1.0 {
            return Err(BiotError::InvalidInput(
                "kernel amplitude must be below 1 to keep A positive definite".into(),
            ));
        }
        if lag_scaling <= 0.0 {
            return Err(BiotError::InvalidInput("lag scaling must be positive".into()));
        }
        Ok(Self {
            spec,
            lag_scaling,
            min_lag: f64::NEG_INFINITY,
            max_lag: f64::INFINITY,
        })
    }

    pub fn constant(k0: f64) -> Result<Self> {
        Self::new(KernelSpec::Constant { k0 }, 1.0)
    }

    /// Benchmark kernel with unit lag scaling, defined for every real lag.
    pub fn benchmark(k0: f64) -> Result<Self> {
        Self::new(KernelSpec::benchmark(k0), 1.0)
    }

    /// Restricts the evaluable lags to `[min_lag, max_lag]`.
    pub fn with_range(mut self, min_lag: f64, max_lag: f64) -> Self {
        self.min_lag = min_lag;
        self.max_lag = max_lag;
        self
    }

    pub fn spec(&self) -> KernelSpec {
        self.spec
    }

    pub fn lag_scaling(&self) -> f64 {
        self.lag_scaling
    }

    pub fn range(&self) -> (f64, f64) {
        (self.min_lag, self.max_lag)
    }

    pub fn is_memoryless(&self) -> bool {
        self.spec.oscillation().0 == 0.0
    }

    /// Scalar profile `k0 (1 + a sin(ω s r))`, ignoring the range.
    pub fn scalar(&self, lag: f64) -> f64 {
        let (a, w) = self.spec.oscillation();
        let k0 = self.spec.k0();
        if a == 0.0 {
            k0
        } else {
            k0 * (1.0 + a * (w * self.lag_scaling * lag).sin())
        }
    }

    pub fn eval(&self, lag: f64) -> Result<Tensor2> {
        if lag < self.min_lag || lag > self.max_lag {
            return Err(BiotError::KernelRange {
                lag,
                min: self.min_lag,
                max: self.max_lag,
            });
        }
        Ok(tensor::scaled(&tensor::identity(), self.scalar(lag)))
    }
}
