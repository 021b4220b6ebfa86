use crate::error::{BiotError, Result};

use super::csr::{CsrMatrix, TripletBuilder};

/// 2×2 block layout flattened into one matrix: unknowns of block 0 first,
/// then block 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSystem {
    sizes: [usize; 2],
}

impl BlockSystem {
    pub fn new(first: usize, second: usize) -> Self {
        Self {
            sizes: [first, second],
        }
    }

    pub fn sizes(&self) -> [usize; 2] {
        self.sizes
    }

    pub fn dim(&self) -> usize {
        self.sizes[0] + self.sizes[1]
    }

    pub fn offset(&self, block: usize) -> usize {
        if block == 0 {
            0
        } else {
            self.sizes[0]
        }
    }

    /// Flattens `[[a00, a01], [a10, a11]]`; `None` marks a zero block.
    pub fn flatten(&self, blocks: [[Option<&CsrMatrix>; 2]; 2]) -> Result<CsrMatrix> {
        let mut builder = TripletBuilder::new(self.dim(), self.dim());
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                let Some(m) = block else { continue };
                if m.shape() != (self.sizes[bi], self.sizes[bj]) {
                    return Err(BiotError::DimensionMismatch {
                        expected: self.sizes[bi],
                        got: m.nrows(),
                    });
                }
                let (ro, co) = (self.offset(bi), self.offset(bj));
                for r in 0..m.nrows() {
                    let (cols, vals) = m.row(r);
                    for (&c, &v) in cols.iter().zip(vals) {
                        builder.push(ro + r, co + c, v);
                    }
                }
            }
        }
        Ok(builder.build())
    }

    pub fn join(&self, first: &[f64], second: &[f64]) -> Vec<f64> {
        debug_assert_eq!(first.len(), self.sizes[0]);
        debug_assert_eq!(second.len(), self.sizes[1]);
        let mut out = Vec::with_capacity(self.dim());
        out.extend_from_slice(first);
        out.extend_from_slice(second);
        out
    }

    pub fn split(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = v.split_at(self.sizes[0]);
        (a.to_vec(), b.to_vec())
    }

    pub fn join_masks(&self, first: &[bool], second: &[bool]) -> Vec<bool> {
        first.iter().chain(second).copied().collect()
    }
}
