use alloc::vec::Vec;

use super::{MarkovError, Result};

/// Row sums must equal 1 within this tolerance.
pub(crate) const ROW_SUM_TOL: f64 = 1e-12;

/// A row-stochastic `s × s` matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    size: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(MarkovError::Empty);
        }
        let mut data = Vec::with_capacity(size * size);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != size {
                return Err(MarkovError::NotSquare { row, len: r.len(), size });
            }
            data.extend(r);
        }
        Self::from_row_major(size, data)
    }

    pub fn from_row_major(size: usize, data: Vec<f64>) -> Result<Self> {
        if size == 0 {
            return Err(MarkovError::Empty);
        }
        if data.len() != size * size {
            return Err(MarkovError::NotSquare { row: data.len() / size, len: data.len() % size, size });
        }
        for (row, r) in data.chunks(size).enumerate() {
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
                return Err(MarkovError::InvalidEntry { row, col, value });
            }
            let sum: f64 = r.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(MarkovError::RowSum { row, sum });
            }
        }
        Ok(Self { size, data })
    }

    pub fn identity(size: usize) -> Self {
        let mut data = alloc::vec![0.0; size * size];
        for i in 0..size {
            data[i * size + i] = 1.0;
        }
        Self { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.size).map(<[f64]>::to_vec).collect()
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    /// `self · other`.
    pub fn matmul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        TransitionMatrix { size: self.size, data: square_mul(self.size, &self.data, &other.data) }
    }

    /// `P^k` by repeated multiplication (`P^0 = I`).
    pub fn power(&self, k: usize) -> TransitionMatrix {
        (0..k).fold(Self::identity(self.size), |acc, _| acc.matmul(self))
    }

    /// Row vector times matrix: `v · P`.
    pub fn left_mul(&self, v: &[f64]) -> Vec<f64> {
        let s = self.size;
        (0..s).map(|j| (0..s).map(|i| v[i] * self.data[i * s + j]).sum()).collect()
    }
}

/// Row-major product of two `s × s` matrices.
pub(crate) fn square_mul(s: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; s * s];
    for i in 0..s {
        for k in 0..s {
            let aik = a[i * s + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..s {
                out[i * s + j] += aik * b[k * s + j];
            }
        }
    }
    out
}
