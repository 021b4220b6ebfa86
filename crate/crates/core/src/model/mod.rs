//! Physical parameters and the permeability memory machinery.

mod convolution;
mod history;
mod kernel;
mod params;

pub use convolution::{
    flow_convolution, kernel_difference, mechanics_convolution, trapezoid_weights,
    ConvolutionQuadrature, HistoryMode, MechanicsConvolution,
};
pub use history::HistoryStore;
pub use kernel::{KernelSpec, PermeabilityKernel};
pub use params::BiotParameters;
