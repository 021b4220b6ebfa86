//! Discrete memory terms.
//!
//! The flow memory `∫_0^{t_n} A(t_n − ζ) ∇p(ζ) dζ` is approximated with the
//! trapezoid rule on the uniform grid, and the time derivative of the
//! mechanics memory with `A(0)∇p^n + Σ ω_i [A(t_n − ζ_i) − A(t_n − τ − ζ_i)] ∇p^i`.
//! Both work on precomputed component matrices, so a step costs a few
//! matrix-vector products per stored level.

use crate::error::{BiotError, Result};
use crate::sparse::CsrMatrix;
use crate::tensor::{self, Tensor2};

use super::history::HistoryStore;
use super::kernel::PermeabilityKernel;

/// Trapezoid weights `[1/2, 1, ..., 1, 1/2]` for levels `0..=n`. For `n = 0`
/// the list is empty (an integral over an empty interval).
pub fn trapezoid_weights(n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let mut w = vec![1.0; n + 1];
    w[0] = 0.5;
    w[n] = 0.5;
    w
}

/// Trapezoid convolution quadrature on a uniform grid with step `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionQuadrature {
    tau: f64,
}

impl ConvolutionQuadrature {
    pub fn new(tau: f64) -> Self {
        Self { tau }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn weights(&self, n: usize) -> Vec<f64> {
        trapezoid_weights(n)
    }

    /// `Σ τ ω_i`, equal to `t_n`.
    pub fn total_weight(&self, n: usize) -> f64 {
        self.tau * trapezoid_weights(n).iter().sum::<f64>()
    }
}

/// Whether the newest level `p^n` takes part in the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistoryMode {
    /// Sum over `i = 0..=n`; the history must hold `p^n`.
    IncludeCurrent,
    /// Sum over `i = 0..n`; the `i = n` term is left to the caller.
    ExcludeCurrent,
}

fn apply_tensor_components(
    components: &[[CsrMatrix; 2]; 2],
    a: &Tensor2,
    scale: f64,
    x: &[f64],
    out: &mut [f64],
) -> Result<()> {
    for (i, row) in components.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            let c = scale * a[i][j];
            if c != 0.0 {
                m.matvec_add(c, x, out)?;
            }
        }
    }
    Ok(())
}

fn check_history(history: &HistoryStore, needed: usize, cols: usize) -> Result<()> {
    if history.len() < needed {
        return Err(BiotError::InvalidInput(format!(
            "history holds {} levels but {needed} are required",
            history.len()
        )));
    }
    if history.dofs() != cols {
        return Err(BiotError::DimensionMismatch {
            expected: cols,
            got: history.dofs(),
        });
    }
    Ok(())
}

/// `Σ_i ω_i Σ_ab A(t_n − ζ_i)_ab (K_ab p^i)` at level `n`.
pub fn flow_convolution(
    history: &HistoryStore,
    kernel: &PermeabilityKernel,
    n: usize,
    stiffness: &[[CsrMatrix; 2]; 2],
    mode: HistoryMode,
) -> Result<Vec<f64>> {
    let rows = stiffness[0][0].nrows();
    let mut out = vec![0.0; rows];
    if n == 0 {
        return Ok(out);
    }
    let last = match mode {
        HistoryMode::IncludeCurrent => n,
        HistoryMode::ExcludeCurrent => n - 1,
    };
    check_history(history, last + 1, stiffness[0][0].ncols())?;
    let weights = trapezoid_weights(n);
    let tau = history.tau();
    for (i, &w) in weights.iter().enumerate().take(last + 1) {
        let a = kernel.eval((n - i) as f64 * tau)?;
        apply_tensor_components(stiffness, &a, w, history.level(i), &mut out)?;
    }
    Ok(out)
}

/// Result of [`mechanics_convolution`].
#[derive(Debug, Clone)]
pub struct MechanicsConvolution {
    /// `Σ_{i<n} ω_i G(ΔA^i) p^i`.
    pub explicit: Vec<f64>,
    /// Tensor multiplying `p^n`: `A(0) + ω_n ΔA^n`.
    pub implicit_tensor: Tensor2,
}

/// `ΔA^i = A(t_n − ζ_i) − A(t_n − τ − ζ_i)` for lag index `k = n − i`.
pub fn kernel_difference(kernel: &PermeabilityKernel, k: usize, tau: f64) -> Result<Tensor2> {
    let now = kernel.eval(k as f64 * tau)?;
    let before = kernel.eval((k as f64 - 1.0) * tau)?;
    Ok(tensor::sub(&now, &before))
}

/// Derivative of the mechanics memory term at level `n`, split into the
/// explicit part built from `p^0..p^{n-1}` and the tensor acting on `p^n`.
pub fn mechanics_convolution(
    history: &HistoryStore,
    kernel: &PermeabilityKernel,
    n: usize,
    coupling: &[[CsrMatrix; 2]; 2],
) -> Result<MechanicsConvolution> {
    let tau = history.tau();
    let rows = coupling[0][0].nrows();
    let mut explicit = vec![0.0; rows];
    let a0 = kernel.eval(0.0)?;
    if n == 0 {
        return Ok(MechanicsConvolution {
            explicit,
            implicit_tensor: a0,
        });
    }
    check_history(history, n, coupling[0][0].ncols())?;
    let weights = trapezoid_weights(n);
    let delta_n = kernel_difference(kernel, 0, tau)?;
    for (i, &w) in weights.iter().enumerate().take(n) {
        let delta = kernel_difference(kernel, n - i, tau)?;
        apply_tensor_components(coupling, &delta, w, history.level(i), &mut explicit)?;
    }
    Ok(MechanicsConvolution {
        explicit,
        implicit_tensor: tensor::add(&a0, &tensor::scaled(&delta_n, weights[n])),
    })
}
