//! Linear solvers. Every solve re-checks its residual `‖A x − b‖ ≤ tol·‖b‖`
//! with an explicit product before returning.

use crate::error::{BiotError, Result};

use super::banded::{BandCholesky, BandLu};
use super::csr::{dot, norm2, CsrMatrix};
use super::ordering::reverse_cuthill_mckee;

pub const DEFAULT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            max_iter: 10_000,
        }
    }
}

fn check_square(a: &CsrMatrix, b: &[f64]) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(BiotError::DimensionMismatch {
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    if b.len() != a.nrows() {
        return Err(BiotError::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    Ok(())
}

/// `‖A x − b‖ / ‖b‖`, or the absolute residual when `b = 0`.
pub fn relative_residual(a: &CsrMatrix, x: &[f64], b: &[f64]) -> Result<f64> {
    let ax = a.matvec(x)?;
    let r: f64 = ax
        .iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt();
    let nb = norm2(b);
    Ok(if nb > 0.0 { r / nb } else { r })
}

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite
/// systems.
pub fn solve_spd(a: &CsrMatrix, b: &[f64], opts: SolverOptions) -> Result<Vec<f64>> {
    check_square(a, b)?;
    let n = b.len();
    let nb = norm2(b);
    let mut x = vec![0.0; n];
    if nb == 0.0 {
        return Ok(x);
    }
    let diag = a.diagonal();
    if let Some((row, &d)) = diag.iter().enumerate().find(|(_, &d)| d <= 0.0) {
        return Err(BiotError::NotPositiveDefinite { row, pivot: d });
    }
    let inv_diag: Vec<f64> = diag.iter().map(|d| 1.0 / d).collect();

    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    // iterate to a slightly tighter target so that the explicit check passes
    let target = 0.5 * opts.rel_tol * nb;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        a.matvec_into(&p, &mut ap)?;
        let pap = dot(&p, &ap);
        if pap <= 0.0 || !pap.is_finite() {
            return Err(BiotError::NotPositiveDefinite {
                row: iterations,
                pivot: pap,
            });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        iterations += 1;
        if norm2(&r) <= target {
            break;
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let residual = relative_residual(a, &x, b)?;
    if residual > opts.rel_tol {
        return Err(BiotError::NotConverged {
            iterations,
            residual,
        });
    }
    Ok(x)
}

/// Direct solve of a general square system (RCM reordering + banded LU with
/// partial pivoting and iterative refinement).
pub fn solve_general(a: &CsrMatrix, b: &[f64], opts: SolverOptions) -> Result<Vec<f64>> {
    check_square(a, b)?;
    DirectSolver::lu(a)?.with_tolerance(opts.rel_tol).solve(b)
}

#[derive(Debug, Clone)]
enum Factor {
    Lu(BandLu),
    Cholesky(BandCholesky),
}

/// A reusable factorization of a fixed matrix in RCM order.
#[derive(Debug, Clone)]
pub struct DirectSolver {
    matrix: CsrMatrix,
    perm: Vec<usize>,
    factor: Factor,
    rel_tol: f64,
    max_refinements: usize,
}

impl DirectSolver {
    /// LU with partial pivoting; works for any nonsingular matrix.
    pub fn lu(a: &CsrMatrix) -> Result<Self> {
        let perm = reverse_cuthill_mckee(a);
        let factor = Factor::Lu(BandLu::factor(&a.permute_symmetric(&perm))?);
        Ok(Self::assemble(a, perm, factor))
    }

    /// Cholesky; fails with [`BiotError::NotPositiveDefinite`] when the
    /// matrix is not SPD.
    pub fn cholesky(a: &CsrMatrix) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(BiotError::DimensionMismatch {
                expected: a.nrows(),
                got: a.ncols(),
            });
        }
        let scale = a.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if a.symmetry_defect() > 1e-12 * scale.max(1.0) {
            return Err(BiotError::InvalidInput(
                "Cholesky requested for a non-symmetric matrix".into(),
            ));
        }
        let perm = reverse_cuthill_mckee(a);
        let factor = Factor::Cholesky(BandCholesky::factor(&a.permute_symmetric(&perm))?);
        Ok(Self::assemble(a, perm, factor))
    }

    fn assemble(a: &CsrMatrix, perm: Vec<usize>, factor: Factor) -> Self {
        Self {
            matrix: a.clone(),
            perm,
            factor,
            rel_tol: DEFAULT_REL_TOL,
            max_refinements: 3,
        }
    }

    pub fn with_tolerance(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply_factor(&self, rhs: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = self.perm.iter().map(|&old| rhs[old]).collect();
        match &self.factor {
            Factor::Lu(f) => f.solve_in_place(&mut y),
            Factor::Cholesky(f) => f.solve_in_place(&mut y),
        }
        let mut x = vec![0.0; y.len()];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new];
        }
        x
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.dim() {
            return Err(BiotError::DimensionMismatch {
                expected: self.dim(),
                got: b.len(),
            });
        }
        let nb = norm2(b);
        if nb == 0.0 {
            return Ok(vec![0.0; b.len()]);
        }
        let mut x = self.apply_factor(b);
        let mut residual = relative_residual(&self.matrix, &x, b)?;
        let mut refinements = 0;
        while residual > 1e-3 * self.rel_tol && refinements < self.max_refinements {
            let ax = self.matrix.matvec(&x)?;
            let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
            let dx = self.apply_factor(&r);
            let candidate: Vec<f64> = x.iter().zip(&dx).map(|(x, d)| x + d).collect();
            let cand_res = relative_residual(&self.matrix, &candidate, b)?;
            refinements += 1;
            if cand_res >= residual {
                break;
            }
            x = candidate;
            residual = cand_res;
        }
        if !residual.is_finite() || residual > self.rel_tol {
            return Err(BiotError::ResidualCheck {
                residual,
                tolerance: self.rel_tol,
            });
        }
        Ok(x)
    }
}
