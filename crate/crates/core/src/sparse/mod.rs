//! Sparse storage and the linear solvers used by the time integrators.

mod banded;
mod block;
mod csr;
mod ordering;
mod solve;

pub use banded::{BandCholesky, BandLu};
pub use block::BlockSystem;
pub use csr::{dot, norm2, CsrMatrix, TripletBuilder};
pub use ordering::reverse_cuthill_mckee;
pub use solve::{
    relative_residual, solve_general, solve_spd, DirectSolver, SolverOptions, DEFAULT_REL_TOL,
};
