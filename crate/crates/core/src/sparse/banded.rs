//! Band factorizations used by the direct solvers. Callers are expected to
//! reorder the matrix first (see [`super::ordering`]).

use crate::error::{BiotError, Result};

use super::csr::CsrMatrix;

/// LU factorization with partial (row) pivoting of a band matrix.
///
/// Row `i` is stored densely for columns `i - kl ..= i + kl + ku`, which is
/// enough room for the fill produced by row interchanges.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    /// U rows in the row-window layout.
    rows: Vec<f64>,
    /// Gauss multipliers of step k for rows k+1..=k+kl.
    multipliers: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(BiotError::DimensionMismatch {
                expected: n,
                got: a.ncols(),
            });
        }
        let (kl, ku) = a.bandwidths();
        let width = 2 * kl + ku + 1;
        let mut rows = vec![0.0; n * width];
        // slot of absolute column `j` inside the window of row `i`
        let slot = |i: usize, j: usize| j + kl - i;
        for r in 0..n {
            let (cols, vals) = a.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                rows[r * width + slot(r, c)] = v;
            }
        }
        let scale = a
            .values()
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);

        let mut multipliers = vec![0.0; n * kl.max(1)];
        let mut pivots = vec![0; n];
        let mut tmp = vec![0.0; width];
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = rows[k * width + slot(k, k)].abs();
            for i in k + 1..=last {
                let v = rows[i * width + slot(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= scale * 1e-15 || !best.is_finite() {
                return Err(BiotError::Singular { row: k });
            }
            pivots[k] = p;
            let hi = (k + kl + ku).min(n - 1);
            if p != k {
                // swap the contents of columns k..=hi between rows k and p
                for j in k..=hi {
                    tmp[j - k] = rows[k * width + slot(k, j)];
                }
                for j in k..=hi {
                    rows[k * width + slot(k, j)] = rows[p * width + slot(p, j)];
                    rows[p * width + slot(p, j)] = tmp[j - k];
                }
            }
            let pivot = rows[k * width + slot(k, k)];
            for i in k + 1..=last {
                let entry = rows[i * width + slot(i, k)];
                if entry == 0.0 {
                    continue;
                }
                let m = entry / pivot;
                multipliers[k * kl + (i - k - 1)] = m;
                rows[i * width + slot(i, k)] = 0.0;
                for j in k + 1..=hi {
                    let u = rows[k * width + slot(k, j)];
                    if u != 0.0 {
                        rows[i * width + slot(i, j)] -= m * u;
                    }
                }
            }
        }
        Ok(Self {
            n,
            kl,
            ku,
            width,
            rows,
            multipliers,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let (n, kl, ku, width) = (self.n, self.kl, self.ku, self.width);
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for i in k + 1..=(k + kl).min(n.saturating_sub(1)) {
                    b[i] -= self.multipliers[k * kl + (i - k - 1)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let hi = (k + kl + ku).min(n - 1);
            let row = &self.rows[k * width..(k + 1) * width];
            let mut s = b[k];
            for j in k + 1..=hi {
                s -= row[j + kl - k] * b[j];
            }
            b[k] = s / row[kl];
        }
    }
}

/// Cholesky factorization `A = L Lᵀ` of a symmetric positive definite band
/// matrix. Only the lower band is read.
#[derive(Debug, Clone)]
pub struct BandCholesky {
    n: usize,
    bw: usize,
    /// Row `i` holds `L[i][i - bw ..= i]`.
    lower: Vec<f64>,
}

impl BandCholesky {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(BiotError::DimensionMismatch {
                expected: n,
                got: a.ncols(),
            });
        }
        let (bw, _) = a.bandwidths();
        let w = bw + 1;
        let mut lower = vec![0.0; n * w];
        for r in 0..n {
            let (cols, vals) = a.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if c <= r {
                    lower[r * w + (c + bw - r)] = v;
                }
            }
        }
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                // L[i][j] = (A[i][j] - Σ_k L[i][k] L[j][k]) / L[j][j]
                let k0 = j0.max(j.saturating_sub(bw));
                let mut s = lower[i * w + (j + bw - i)];
                for k in k0..j {
                    s -= lower[i * w + (k + bw - i)] * lower[j * w + (k + bw - j)];
                }
                if j == i {
                    if s <= 0.0 || !s.is_finite() {
                        return Err(BiotError::NotPositiveDefinite { row: i, pivot: s });
                    }
                    lower[i * w + bw] = s.sqrt();
                } else {
                    lower[i * w + (j + bw - i)] = s / lower[j * w + bw];
                }
            }
        }
        Ok(Self { n, bw, lower })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        for i in 0..n {
            let mut s = b[i];
            for k in i.saturating_sub(bw)..i {
                s -= self.lower[i * w + (k + bw - i)] * b[k];
            }
            b[i] = s / self.lower[i * w + bw];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..=(i + bw).min(n - 1) {
                s -= self.lower[k * w + (i + bw - k)] * b[k];
            }
            b[i] = s / self.lower[i * w + bw];
        }
    }
}
