//! Finite-element solver for the fully dynamic Biot model with a
//! history-dependent (memory) permeability.
//!
//! Displacement is discretized with continuous P2 vectors and pressure with
//! continuous P1 scalars on structured triangulations of the unit square.
//! Time stepping uses backward differences with a trapezoid convolution
//! quadrature for the memory terms, solved either monolithically or with a
//! fixed-stress splitting iteration.

// validation uses `!(x > 0.0)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// dense element loops read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fem;
pub mod harness;
pub mod mesh;
pub mod mms;
pub mod model;
pub mod schemes;
pub mod sparse;
pub mod tensor;

pub use error::{BiotError, Result};
pub use mesh::{Mesh, Point, Space};
pub use model::{BiotParameters, HistoryStore, KernelSpec, PermeabilityKernel};
pub use schemes::{
    default_stabilization, run_simulation, Discretization, InitialData, Scheme, SchemeState,
    SplitConfig, StepReport, TimeGrid, Trajectory,
};
pub use sparse::CsrMatrix;
